#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fvspectra/analysis.hpp"
#include "fvspectra/block.hpp"
#include "fvspectra/mesh.hpp"
#include "fvspectra/sim.hpp"

namespace fvspectra {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string version = kToolVersion;
  std::string timestamp;

  /// Stamped with the current UTC time.
  static RunManifest make(std::string command, std::vector<std::pair<std::string, std::string>> parameters);
};

nlohmann::json to_json(const RunManifest& manifest);
nlohmann::json to_json(Complex value);
nlohmann::json to_json(const StabilityReport& report);
nlohmann::json to_json(const ExactnessReport& report);
nlohmann::json to_json(const ConvergenceTable& table);
nlohmann::json to_json(const Lambda0Expansion& expansion);

/// {"steps": [...], "offset": x0}
nlohmann::json mesh_to_json(const PeriodicMesh& mesh);
PeriodicMesh mesh_from_json(const nlohmann::json& doc);

/// Manifest as leading "# key: value" lines.
void write_csv_manifest(std::ostream& os, const RunManifest& manifest);
void write_csv(std::ostream& os, const ConvergenceTable& table);
void write_csv(std::ostream& os, const Lambda0Expansion& expansion);
/// Per phi: eigenvalues (physical branch first) and the entries of L(gamma, phi).
void write_symbol_csv(std::ostream& os, const BlockSymbol& bs, const std::vector<double>& phis);

}  // namespace fvspectra
