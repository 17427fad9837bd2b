#include "fvspectra/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <ostream>

#include "fvspectra/error.hpp"

namespace fvspectra {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json complex_list(const std::vector<Complex>& values) {
  auto out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json mapping_json(const LocalMapping& mapping) {
  nlohmann::json out{{"kind", to_string(mapping.kind)}, {"corrected", mapping.corrected()}};
  if (mapping.corrected()) {
    out["derivative_order"] = mapping.derivative_order;
    out["correction"] = mapping.correction;
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorKind::BadArgs, "number formatting failed");
  return std::string(buf, ptr);
}

RunManifest RunManifest::make(std::string command, std::vector<std::pair<std::string, std::string>> parameters) {
  return RunManifest{std::move(command), std::move(parameters), kToolVersion, utc_timestamp()};
}

nlohmann::json to_json(const RunManifest& manifest) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : manifest.parameters) params[k] = v;
  return {{"command", manifest.command},
          {"parameters", params},
          {"version", manifest.version},
          {"timestamp", manifest.timestamp}};
}

nlohmann::json to_json(Complex value) { return {{"re", value.real()}, {"im", value.imag()}}; }

nlohmann::json to_json(const StabilityReport& r) {
  nlohmann::json out{
      {"scheme", r.scheme},
      {"gamma", r.gamma.gamma},
      {"verdict", to_string(r.verdict)},
      {"min_re_eig", r.min_re_eig},
      {"phi_worst", r.phi_worst},
      {"lambda0_taylor", complex_list(r.lambda0_taylor)},
      {"taylor_residual", r.taylor_residual},
      {"lambda_star_0", complex_list(r.lambda_star_0)},
      {"theorem_condition",
       {{"kappa", r.theorem_condition.kappa},
        {"exactness", r.theorem_condition.exactness},
        {"satisfied", r.theorem_condition.satisfied}}},
  };
  if (r.amplification) {
    out["amplification"] = {{"value", number_or_null(r.amplification->value)},
                            {"bounded", r.amplification->bounded},
                            {"phi", r.amplification->phi},
                            {"nu", r.amplification->nu}};
  } else {
    out["amplification"] = nullptr;
  }
  if (r.witness) {
    out["witness"] = {{"kind", r.witness->kind}, {"phi", r.witness->phi}, {"value", to_json(r.witness->value)}};
    if (r.witness->kind == "taylor") out["witness"]["taylor_index"] = r.witness->taylor_index;
    if (r.witness->kind == "amplification") out["witness"]["nu"] = r.witness->nu;
  } else {
    out["witness"] = nullptr;
  }
  if (r.uniform_dissipation) {
    out["uniform_dissipation"] = {{"observed_constant", r.uniform_dissipation->observed},
                                  {"printed_constant", r.uniform_dissipation->printed}};
  } else {
    out["uniform_dissipation"] = nullptr;
  }
  return out;
}

nlohmann::json to_json(const ExactnessReport& r) {
  return {{"scheme", r.scheme},
          {"gamma", r.structure.gamma},
          {"base_mapping", mapping_json(r.base)},
          {"q0", r.base_degree},
          {"corrected_mapping", mapping_json(r.corrected)},
          {"q1", r.corrected_degree},
          {"correction_applied", r.correction_applied},
          {"correction", r.corrected.correction}};
}

nlohmann::json to_json(const ConvergenceTable& table) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"ratio", row.ratio},
                    {"n", row.n},
                    {"h_av", row.h_av},
                    {"error", row.error},
                    {"order", row.order ? nlohmann::json(*row.order) : nlohmann::json(nullptr)}});
  return {{"scheme", table.scheme}, {"ratios", table.ratios}, {"sizes", table.sizes}, {"rows", rows}};
}

nlohmann::json to_json(const Lambda0Expansion& e) {
  return {{"coefficients", complex_list(e.coefficients)}, {"residual", e.residual}};
}

nlohmann::json mesh_to_json(const PeriodicMesh& mesh) {
  return {{"steps", std::vector<double>(mesh.steps().begin(), mesh.steps().end())}, {"offset", mesh.offset()}};
}

PeriodicMesh mesh_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array())
    throw Error(ErrorKind::BadArgs, "mesh document needs a \"steps\" array");
  std::vector<double> steps;
  for (const auto& v : doc["steps"]) {
    if (!v.is_number()) throw Error(ErrorKind::BadArgs, "mesh steps must be numbers");
    steps.push_back(v.get<double>());
  }
  double offset = 0.0;
  if (doc.contains("offset")) {
    if (!doc["offset"].is_number()) throw Error(ErrorKind::BadArgs, "mesh offset must be a number");
    offset = doc["offset"].get<double>();
  }
  return PeriodicMesh::from_steps(std::move(steps), offset);
}

void write_csv_manifest(std::ostream& os, const RunManifest& m) {
  os << "# command: " << m.command << '\n';
  for (const auto& [k, v] : m.parameters) os << "# " << k << ": " << v << '\n';
  os << "# version: " << m.version << '\n';
  os << "# timestamp: " << m.timestamp << '\n';
}

void write_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "ratio,n,h_av,error,order\n";
  for (const auto& row : table.rows)
    os << format_number(row.ratio) << ',' << row.n << ',' << format_number(row.h_av) << ','
       << format_number(row.error) << ',' << (row.order ? format_number(*row.order) : "") << '\n';
}

void write_csv(std::ostream& os, const Lambda0Expansion& e) {
  os << "n,re,im\n";
  for (std::size_t n = 0; n < e.coefficients.size(); ++n)
    os << n + 1 << ',' << format_number(e.coefficients[n].real()) << ',' << format_number(e.coefficients[n].imag())
       << '\n';
  os << "residual," << format_number(e.residual) << ",0\n";
}

void write_symbol_csv(std::ostream& os, const BlockSymbol& bs, const std::vector<double>& phis) {
  const std::size_t m = bs.period();
  os << "phi";
  for (std::size_t b = 0; b < m; ++b) os << ",lambda" << b << "_re,lambda" << b << "_im";
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) os << ",L" << j << k << "_re,L" << j << k << "_im";
  os << '\n';
  for (double phi : phis) {
    const auto l = bs.symbol(phi);
    auto ev = eigenvalues(l).eigenvalues;
    const Complex target(0.0, phi);
    const auto physical =
        std::min_element(ev.begin(), ev.end(), [&](Complex a, Complex b) { return std::abs(a - target) < std::abs(b - target); });
    std::iter_swap(ev.begin(), physical);
    std::sort(ev.begin() + 1, ev.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    os << format_number(phi);
    for (const auto& v : ev) os << ',' << format_number(v.real()) << ',' << format_number(v.imag());
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) os << ',' << format_number(l(j, k).real()) << ',' << format_number(l(j, k).imag());
    os << '\n';
  }
}

}  // namespace fvspectra
