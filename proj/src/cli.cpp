#include "fvspectra/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fvspectra/analysis.hpp"
#include "fvspectra/error.hpp"
#include "fvspectra/report.hpp"
#include "fvspectra/sim.hpp"

namespace fvspectra::cli {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

struct MeshArgs {
  double xi = 0.0;
  std::string mesh_file;

  void add_to(CLI::App& app) {
    auto* xi_opt = app.add_option("--xi", xi, "alternating mesh parameter, steps (1+xi) h_av and (1-xi) h_av")
                       ->check(CLI::Range(0.0, 1.0));
    auto* mesh_opt = app.add_option("--mesh", mesh_file, "JSON mesh file {\"steps\": [...], \"offset\": 0}");
    xi_opt->excludes(mesh_opt);
  }

  MeshStructure structure() const {
    if (!mesh_file.empty()) {
      std::ifstream in(mesh_file);
      if (!in) throw Error(ErrorKind::BadArgs, "cannot open mesh file '" + mesh_file + "'");
      nlohmann::json doc;
      try {
        in >> doc;
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadArgs, std::string("malformed mesh file: ") + e.what());
      }
      return mesh_from_json(doc).structure();
    }
    if (!(xi >= 0.0 && xi < 1.0)) throw Error(ErrorKind::XiOutOfRange, "xi must lie in [0, 1)");
    return MeshStructure::alternating(xi);
  }

  void record(Params& params) const {
    if (!mesh_file.empty())
      params.emplace_back("mesh", mesh_file);
    else
      params.emplace_back("xi", format_number(xi));
  }
};

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>)
      out += format_number(values[i]);
    else
      out += std::to_string(values[i]);
  }
  return out;
}

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::BadArgs, "cannot write '" + path + "'");
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void emit_json(std::ostream& os, const RunManifest& manifest, const std::string& key, nlohmann::json body) {
  nlohmann::json doc{{"manifest", to_json(manifest)}, {key, std::move(body)}};
  os << doc.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-Fourier stability and accuracy analysis of finite-volume schemes on periodic meshes",
               "fvspectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string scheme_name;
  std::string out_path;
  MeshArgs mesh_args;

  auto* stability = app.add_subcommand("stability", "L2 stability verdict for a scheme on a periodic mesh");
  std::size_t phi_grid = 512;
  std::size_t nu_grid = 48;
  stability->add_option("--scheme", scheme_name, "fv0, fv2, fv4, ..., r3, r5")->required();
  mesh_args.add_to(*stability);
  stability->add_option("--phi-grid", phi_grid, "uniform phi samples on [0, 2 pi/m)")->check(CLI::Range(32, 100000));
  stability->add_option("--nu-grid", nu_grid, "log-spaced nu samples")->check(CLI::Range(32, 100000));
  stability->add_option("--out", out_path, "output file (default stdout)");

  auto* expansion = app.add_subcommand("expansion", "Taylor coefficients of the physical eigenvalue branch");
  int order = 4;
  expansion->add_option("--scheme", scheme_name, "scheme name")->required();
  expansion->add_option("--xi", mesh_args.xi, "alternating mesh parameter")->check(CLI::Range(0.0, 1.0));
  expansion->add_option("--order", order, "highest power of phi (1..5)");
  expansion->add_option("--out", out_path, "output file (default stdout)");

  auto* convergence = app.add_subcommand("convergence", "error table on alternating meshes");
  std::vector<double> ratios{1.0};
  std::vector<std::size_t> sizes{20, 40, 80, 160, 320};
  SimConfig sim;
  std::string format = "csv";
  convergence->add_option("--scheme", scheme_name, "scheme name")->required();
  convergence->add_option("--ratios", ratios, "h_max/h_min values")->delimiter(',');
  convergence->add_option("--N", sizes, "even node counts, increasing")->delimiter(',');
  convergence->add_option("--t-end", sim.t_end, "final time");
  convergence->add_option("--courant", sim.courant, "tau / h_min");
  convergence->add_option("--rk-order", sim.rk_order, "degree of the linear Runge-Kutta update");
  convergence->add_option("--initial", sim.initial, "sin, cos, sin<k>, cos<k>, expcos");
  convergence->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  convergence->add_option("--out", out_path, "output file (default stdout)");

  auto* exactness = app.add_subcommand("exactness", "exactness degree and corrected mapping");
  int max_degree = 8;
  exactness->add_option("--scheme", scheme_name, "scheme name")->required();
  mesh_args.add_to(*exactness);
  exactness->add_option("--max-degree", max_degree, "highest monomial degree tested")->check(CLI::Range(0, 16));
  exactness->add_option("--out", out_path, "output file (default stdout)");

  auto* symbol = app.add_subcommand("symbol", "eigenvalues and entries of L(gamma, phi) on a phi grid");
  std::size_t symbol_grid = 64;
  symbol->add_option("--scheme", scheme_name, "scheme name")->required();
  mesh_args.add_to(*symbol);
  symbol->add_option("--phi-grid", symbol_grid, "uniform phi samples on [0, 2 pi/m)")->check(CLI::Range(1, 100000));
  symbol->add_option("--out", out_path, "output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const Scheme scheme = scheme_by_name(scheme_name);
    Params params{{"scheme", scheme_name}};

    if (stability->parsed()) {
      mesh_args.record(params);
      params.emplace_back("phi_grid", std::to_string(phi_grid));
      params.emplace_back("nu_grid", std::to_string(nu_grid));
      const auto report = stability_verdict(scheme, mesh_args.structure(), {phi_grid, nu_grid, true});
      Sink sink(out_path, out);
      emit_json(sink.stream(), RunManifest::make("stability", params), "report", to_json(report));
      return report.verdict == Verdict::Unstable ? kExitUnstable : kExitOk;
    }

    if (expansion->parsed()) {
      if (order < 1 || order > 5) throw Error(ErrorKind::BadArgs, "--order must be in 1..5");
      mesh_args.record(params);
      params.emplace_back("order", std::to_string(order));
      const auto bs = BlockSymbol::assemble(scheme, mesh_args.structure());
      const auto result = lambda0_taylor(bs, order);
      Sink sink(out_path, out);
      write_csv_manifest(sink.stream(), RunManifest::make("expansion", params));
      write_csv(sink.stream(), result);
      return kExitOk;
    }

    if (convergence->parsed()) {
      params.emplace_back("ratios", join(ratios));
      params.emplace_back("N", join(sizes));
      params.emplace_back("t_end", format_number(sim.t_end));
      params.emplace_back("courant", format_number(sim.courant));
      params.emplace_back("rk_order", std::to_string(sim.rk_order));
      params.emplace_back("initial", sim.initial);
      const auto table = convergence_study(scheme, ratios, sizes, sim);
      const auto manifest = RunManifest::make("convergence", params);
      Sink sink(out_path, out);
      if (format == "json") {
        emit_json(sink.stream(), manifest, "table", to_json(table));
      } else {
        write_csv_manifest(sink.stream(), manifest);
        write_csv(sink.stream(), table);
      }
      return kExitOk;
    }

    if (exactness->parsed()) {
      mesh_args.record(params);
      params.emplace_back("max_degree", std::to_string(max_degree));
      const auto report = exactness_report(scheme, mesh_args.structure(), max_degree);
      Sink sink(out_path, out);
      emit_json(sink.stream(), RunManifest::make("exactness", params), "report", to_json(report));
      return kExitOk;
    }

    if (symbol->parsed()) {
      mesh_args.record(params);
      params.emplace_back("phi_grid", std::to_string(symbol_grid));
      const auto bs = BlockSymbol::assemble(scheme, mesh_args.structure());
      std::vector<double> phis(symbol_grid);
      const double width = kTwoPi / static_cast<double>(bs.period());
      for (std::size_t i = 0; i < symbol_grid; ++i) phis[i] = width * static_cast<double>(i) / static_cast<double>(symbol_grid);
      Sink sink(out_path, out);
      write_csv_manifest(sink.stream(), RunManifest::make("symbol", params));
      write_symbol_csv(sink.stream(), bs, phis);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace fvspectra::cli
