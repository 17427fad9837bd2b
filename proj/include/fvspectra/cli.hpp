#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fvspectra::cli {

/// Exit codes: 0 success or stable/marginal verdict, 2 unstable verdict,
/// 1 usage or numerical error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnstable = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fvspectra::cli
