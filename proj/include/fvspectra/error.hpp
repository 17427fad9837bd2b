#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fvspectra {

enum class ErrorKind {
  NonSquare,
  IterationLimit,
  Inconsistent,
  NonFinite,
  ZeroSize,
  OddN,
  XiOutOfRange,
  NonPositiveStep,
  EmptyInput,
  MeshMismatch,
  OddP,
  SingularStencil,
  UnknownScheme,
  NoDissipation,
  SizeNotDivisible,
  NotExact,
  InconsistentCorrection,
  BranchAmbiguity,
  UnstableBlowup,
  BadArgs,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` is the machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the time integrator when the solution norm exceeds the blowup
/// threshold. Carries the time at which it happened.
class BlowupError : public Error {
 public:
  BlowupError(double time, double norm_ratio);

  double time() const noexcept { return time_; }
  double norm_ratio() const noexcept { return norm_ratio_; }

 private:
  double time_;
  double norm_ratio_;
};

}  // namespace fvspectra
