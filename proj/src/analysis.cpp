#include "fvspectra/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fvspectra/error.hpp"
#include "fvspectra/parallel.hpp"

namespace fvspectra {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kExactTol = 1e-11;
constexpr double kNegativeTol = 1e-9;
constexpr double kTaylorTol = 1e-9;
constexpr double kUnbounded = 1e6;
constexpr int kSeriesTerms = 24;

std::vector<double> local_steps(const PeriodicMesh& mesh, int s, long j) {
  std::vector<double> steps(static_cast<std::size_t>(2 * s));
  for (long i = -s; i < s; ++i) steps[static_cast<std::size_t>(i + s)] = mesh.step(j + i);
  return steps;
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

// Row-j residual and the magnitude it is compared against.
struct RowResidual {
  Complex eps;
  double tolerance;
};

RowResidual row_residual(const Scheme& scheme, const PeriodicMesh& mesh, const SmoothFunction& f,
                         const SmoothFunction& df, const LocalMapping& mapping, long j) {
  const int s = scheme.half_width();
  const auto coeffs = scheme.coefficients(local_steps(mesh, s, j));
  Complex eps = -mapping.value(mesh, df, j);
  double a_max = 0.0;
  double f_max = 0.0;
  for (int k = -s; k <= s; ++k) {
    const double a = coeffs[static_cast<std::size_t>(k + s)];
    const Complex v = mapping.value(mesh, f, j + k);
    eps += a * v;
    a_max = std::max(a_max, std::abs(a));
    f_max = std::max(f_max, std::abs(v));
  }
  f_max = std::max(f_max, std::abs(mapping.value(mesh, df, j)) * mesh.h_av());
  return {eps, kExactTol * a_max * f_max};
}

bool exact_on_degree(const Scheme& scheme, const PeriodicMesh& mesh, const LocalMapping& mapping, int n) {
  for (long j = 0; j < static_cast<long>(mesh.period()); ++j) {
    const auto f = SmoothFunction::monomial(n, mesh.node(j));
    const auto r = row_residual(scheme, mesh, f, f.derivative(), mapping, j);
    if (std::abs(r.eps) > r.tolerance) return false;
  }
  return true;
}

Complex nearest_eigenvalue(const ComplexMatrix& l, Complex target) {
  const auto spectrum = eigenvalues(l);
  const auto& ev = spectrum.eigenvalues;
  std::size_t best = 0;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double d = std::abs(ev[i] - target);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      best = i;
    } else if (d < d2) {
      d2 = d;
    }
  }
  if (ev.size() > 1 && d2 - d1 <= 1e-10)
    throw Error(ErrorKind::BranchAmbiguity, "two eigenvalues are equally close to i*phi");
  return ev[best];
}

double min_real_eigenvalue(const ComplexMatrix& l) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& v : eigenvalues(l).eigenvalues) out = std::min(out, v.real());
  return out;
}

double printed_dissipation_constant(int s) {
  return std::pow(2.0, s) * factorial(s) * factorial(s + 1) / factorial(2 * s + 2);
}

// First n in 2..last with |Re c_n| above the threshold.
std::optional<int> leading_real_coefficient(const std::vector<Complex>& series, int last) {
  for (int n = 2; n <= last && n < static_cast<int>(series.size()); ++n)
    if (std::abs(series[static_cast<std::size_t>(n)].real()) > kTaylorTol) return n;
  return std::nullopt;
}

struct QuickVerdict {
  Verdict verdict = Verdict::Stable;
  EigenScan scan;
  std::vector<Complex> series;
  std::optional<Witness> witness;
};

QuickVerdict quick_verdict(const BlockSymbol& bs, int kappa, std::size_t phi_grid) {
  QuickVerdict out;
  out.scan = eigen_scan(bs, phi_grid);
  out.series = lambda0_series(bs, kSeriesTerms);
  const auto lead = leading_real_coefficient(out.series, kappa + 1);
  if (out.scan.min_re < -kNegativeTol) {
    out.verdict = Verdict::Unstable;
    out.witness = Witness{"eigenvalue", out.scan.phi_worst, out.scan.min_re, 0, 0.0};
  } else if (lead && out.series[static_cast<std::size_t>(*lead)].real() < 0.0) {
    out.verdict = Verdict::Unstable;
    out.witness = Witness{"taylor", 0.0, out.series[static_cast<std::size_t>(*lead)], *lead, 0.0};
  } else if (!lead) {
    out.verdict = Verdict::Marginal;
  }
  return out;
}

}  // namespace

Complex LocalMapping::value(const PeriodicMesh& mesh, const SmoothFunction& f, long j) const {
  Complex base = kind == MappingKind::CellAverage ? f.cell_average(mesh.node(j), mesh.node(j + 1)) : f(mesh.node(j));
  if (corrected()) {
    const long m = static_cast<long>(correction.size());
    const double c = correction[static_cast<std::size_t>(((j % m) + m) % m)];
    if (c != 0.0) base += c * std::pow(mesh.h_av(), derivative_order) * f.derivative(derivative_order)(mesh.node(j));
  }
  return base;
}

MeshFunction LocalMapping::apply(const PeriodicMesh& mesh, const SmoothFunction& f) const {
  MeshFunction out(mesh.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = value(mesh, f, static_cast<long>(j));
  return out;
}

std::string to_string(const LocalMapping& mapping) {
  std::string out(to_string(mapping.kind));
  if (mapping.corrected()) out = "corrected " + out;
  return out;
}

MeshFunction cell_average_map(const PeriodicMesh& mesh, const SmoothFunction& f) {
  return LocalMapping::cell_average().apply(mesh, f);
}

Complex truncation_error_at(const Scheme& scheme, const PeriodicMesh& mesh, const SmoothFunction& f,
                            const LocalMapping& mapping, long j) {
  return row_residual(scheme, mesh, f, f.derivative(), mapping, j).eps;
}

TruncationError truncation_error(const Scheme& scheme, const PeriodicMesh& mesh, const SmoothFunction& f,
                                 const LocalMapping& mapping) {
  TruncationError out{MeshFunction(mesh.size()), mapping, f.name()};
  const auto df = f.derivative();
  for (std::size_t j = 0; j < mesh.size(); ++j)
    out.values[j] = row_residual(scheme, mesh, f, df, mapping, static_cast<long>(j)).eps;
  return out;
}

int exactness_degree(const Scheme& scheme, const PeriodicMesh& mesh, const LocalMapping& mapping, int max_degree) {
  int q = -1;
  for (int n = 0; n <= max_degree; ++n) {
    if (!exact_on_degree(scheme, mesh, mapping, n)) break;
    q = n;
  }
  return q;
}

LocalMapping corrected_map(const Scheme& scheme, const PeriodicMesh& mesh, const LocalMapping& base, int r, int q) {
  if (base.corrected()) throw Error(ErrorKind::BadArgs, "base mapping is already corrected");
  if (q < 1 || r != q) throw Error(ErrorKind::BadArgs, "only r == q >= 1 is supported");
  if (exactness_degree(scheme, mesh, base, q - 1) < q - 1)
    throw Error(ErrorKind::NotExact, "scheme is not " + std::to_string(q - 1) + "-exact under the base mapping");

  const std::size_t m = mesh.period();
  const auto f = SmoothFunction::monomial(q, mesh.node(0), factorial(q));
  const auto df = f.derivative();
  std::vector<Complex> rhs(m);
  const double scale = std::pow(mesh.h_av(), 1.0 - q);
  for (std::size_t j = 0; j < m; ++j) {
    const auto res = row_residual(scheme, mesh, f, df, base, static_cast<long>(j));
    rhs[j] = std::abs(res.eps) <= res.tolerance ? Complex(0.0) : -scale * res.eps;
  }

  LocalMapping out{base.kind, r, std::vector<double>(m, 0.0)};
  if (std::all_of(rhs.begin(), rhs.end(), [](Complex v) { return v == Complex(0.0); })) return out;

  const auto bs = block_matrices(scheme, mesh);
  std::vector<Complex> c;
  try {
    c = solve_min_norm(bs.symbol(0.0), rhs);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconsistent) throw;
    throw Error(ErrorKind::InconsistentCorrection,
                "weighted period sum of the degree-" + std::to_string(q) + " truncation error does not vanish");
  }
  for (std::size_t j = 0; j < m; ++j) out.correction[j] = c[j].real();
  return out;
}

ExactnessReport exactness_report(const Scheme& scheme, const MeshStructure& structure, int max_degree) {
  const auto mesh = PeriodicMesh::from_structure(structure, 1);
  ExactnessReport out;
  out.scheme = scheme.name();
  out.structure = structure;
  out.base = LocalMapping::for_scheme(scheme);
  out.base_degree = exactness_degree(scheme, mesh, out.base, max_degree);
  out.corrected = out.base;
  out.corrected.derivative_order = out.base_degree + 1;
  out.corrected.correction.assign(mesh.period(), 0.0);
  out.corrected_degree = out.base_degree;
  if (out.base_degree < 0 || out.base_degree >= max_degree) return out;

  const int q = out.base_degree + 1;
  try {
    out.corrected = corrected_map(scheme, mesh, out.base, q, q);
    out.correction_applied = true;
    out.corrected_degree = exactness_degree(scheme, mesh, out.corrected, max_degree);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InconsistentCorrection) throw;
  }
  return out;
}

std::vector<Complex> symbol_truncation(const Scheme& scheme, const MeshStructure& structure, double phi,
                                       const LocalMapping& mapping) {
  const std::size_t m = structure.period();
  const auto f = SmoothFunction::exponential(phi);
  std::vector<double> nodes(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) nodes[j + 1] = nodes[j] + 1.0 + structure.gamma[j];

  Eigen::VectorXcd v(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    Complex val = mapping.kind == MappingKind::CellAverage ? f.cell_average(nodes[j], nodes[j + 1]) : f(nodes[j]);
    if (mapping.corrected())
      val += mapping.correction[j % mapping.correction.size()] * std::pow(kI * phi, mapping.derivative_order) *
             f(nodes[j]);
    v(static_cast<Eigen::Index>(j)) = val;
  }
  const auto l = BlockSymbol::assemble(scheme, structure).symbol(phi).eigen();
  const Eigen::VectorXcd eps = kI * phi * v - l * v;
  return {eps.data(), eps.data() + eps.size()};
}

Complex lambda0_branch(const BlockSymbol& bs, Complex phi) { return nearest_eigenvalue(bs.symbol(phi), kI * phi); }

std::vector<Complex> lambda_star(const BlockSymbol& bs) {
  auto ev = eigenvalues(bs.symbol(0.0)).eigenvalues;
  if (ev.empty()) return {};
  const auto physical = std::min_element(ev.begin(), ev.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  ev.erase(physical);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  return ev;
}

std::vector<Complex> lambda0_series(const BlockSymbol& bs, int count, double radius, int nodes) {
  if (count < 1 || nodes < count) throw Error(ErrorKind::BadArgs, "series length must be in 1..nodes");
  std::vector<Complex> samples(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) {
    const double theta = kTwoPi * k / nodes;
    samples[static_cast<std::size_t>(k)] = lambda0_branch(bs, std::polar(radius, theta));
  }
  std::vector<Complex> out(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    Complex acc = 0.0;
    for (int k = 0; k < nodes; ++k)
      acc += samples[static_cast<std::size_t>(k)] * std::polar(1.0, -kTwoPi * ((static_cast<long>(n) * k) % nodes) / nodes);
    out[static_cast<std::size_t>(n)] = acc / (static_cast<double>(nodes) * std::pow(radius, n));
  }
  return out;
}

Lambda0Expansion lambda0_taylor(const BlockSymbol& bs, int order) {
  if (order < 1 || order > 5) throw Error(ErrorKind::BadArgs, "expansion order must be in 1..5");
  const auto series = lambda0_series(bs, kSeriesTerms);
  Lambda0Expansion out;
  out.coefficients.assign(series.begin() + 1, series.begin() + 1 + order);

  const int samples = 2 * order + 6;
  for (int i = 0; i < samples; ++i) {
    const double phi = 0.1 * std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * samples));
    Complex approx = 0.0;
    for (auto it = series.rbegin(); it != series.rend(); ++it) approx = approx * phi + *it;
    out.residual = std::max(out.residual, std::abs(lambda0_branch(bs, phi) - approx));
  }
  return out;
}

std::vector<double> scan_phis(std::size_t m, std::size_t grid) {
  std::vector<double> phis;
  phis.reserve(grid + 4);
  const double width = kTwoPi / static_cast<double>(m);
  for (std::size_t i = 0; i < grid; ++i) phis.push_back(width * static_cast<double>(i) / static_cast<double>(grid));
  for (int k = 1; k <= 4; ++k) phis.push_back(std::pow(10.0, -k));
  return phis;
}

EigenScan eigen_scan(const BlockSymbol& bs, std::size_t phi_grid) {
  const auto phis = scan_phis(bs.period(), phi_grid);
  std::vector<double> mins(phis.size());
  parallel_for(phis.size(), [&](std::size_t i) { mins[i] = min_real_eigenvalue(bs.symbol(phis[i])); });
  EigenScan out{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i < phis.size(); ++i)
    if (mins[i] < out.min_re) out = {mins[i], phis[i]};
  return out;
}

Amplification amplification(const BlockSymbol& bs, std::size_t phi_grid, std::size_t nu_grid) {
  if (phi_grid < 32 || nu_grid < 32) throw Error(ErrorKind::BadArgs, "amplification grids must have >= 32 points");
  const auto phis = scan_phis(bs.period(), phi_grid);
  std::vector<Amplification> partial(phis.size());
  parallel_for(phis.size(), [&](std::size_t i) {
    const ComplexMatrix l = bs.symbol(phis[i]);
    const double nu_max = std::max(1e-2, 50.0 / std::max(min_real_eigenvalue(l), 1e-6));
    Amplification best{1.0, true, phis[i], 0.0};
    for (std::size_t k = 0; k < nu_grid; ++k) {
      const double t = nu_grid == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(nu_grid - 1);
      const double nu = 1e-2 * std::pow(nu_max / 1e-2, t);
      double norm = std::numeric_limits<double>::infinity();
      try {
        norm = opnorm2(expm(Complex(-nu) * l));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonFinite) throw;
      }
      if (norm > best.value) best = {norm, true, phis[i], nu};
      if (norm > kUnbounded) {
        best.bounded = false;
        break;
      }
    }
    partial[i] = best;
  });
  Amplification out{1.0, true, 0.0, 0.0};
  for (const auto& p : partial) {
    if (!p.bounded) return p;
    if (p.value > out.value) out = p;
  }
  return out;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Stable:
      return "stable";
    case Verdict::Unstable:
      return "unstable";
    case Verdict::Marginal:
      return "marginal";
  }
  return "unknown";
}

StabilityReport stability_verdict(const Scheme& scheme, const MeshStructure& gamma, const StabilityOptions& options) {
  if (gamma.period() == 0 || gamma.period() > 32) throw Error(ErrorKind::BadArgs, "structure period must be in 1..32");
  const auto bs = BlockSymbol::assemble(scheme, gamma);
  const int kappa = dissipation_order(scheme);

  StabilityReport out;
  out.scheme = scheme.name();
  out.gamma = gamma;
  const auto quick = quick_verdict(bs, kappa, options.phi_grid);
  out.verdict = quick.verdict;
  out.witness = quick.witness;
  out.min_re_eig = quick.scan.min_re;
  out.phi_worst = quick.scan.phi_worst;

  const auto expansion = lambda0_taylor(bs, 5);
  out.lambda0_taylor = expansion.coefficients;
  out.taylor_residual = expansion.residual;
  out.lambda_star_0 = lambda_star(bs);

  if (options.amplification) {
    out.amplification = amplification(bs, std::max<std::size_t>(options.phi_grid, 32), std::max<std::size_t>(options.nu_grid, 32));
    if (!out.amplification->bounded) {
      if (out.verdict != Verdict::Unstable)
        out.witness = Witness{"amplification", out.amplification->phi, out.amplification->value, 0, out.amplification->nu};
      out.verdict = Verdict::Unstable;
    }
  }

  const auto exactness = exactness_report(scheme, gamma);
  out.theorem_condition = {kappa, exactness.corrected_degree, exactness.corrected_degree >= kappa - 1};

  if (scheme.mapping_kind() == MappingKind::CellAverage) {
    const int s = (scheme.uniform_order() - 1) / 2;
    out.uniform_dissipation = UniformDissipation{uniform_symbol(scheme)(M_PI).real(), printed_dissipation_constant(s)};
  }
  return out;
}

double max_stable_xi(const Scheme& scheme, double tol) {
  if (!(tol >= 1e-4)) throw Error(ErrorKind::BadArgs, "tolerance must be >= 1e-4");
  const int kappa = dissipation_order(scheme);
  auto stable = [&](double xi) {
    return quick_verdict(BlockSymbol::assemble(scheme, MeshStructure::alternating(xi)), kappa, 512).verdict ==
           Verdict::Stable;
  };
  double lo = 0.0;
  double hi = 0.99;
  if (stable(hi)) return hi;
  if (!stable(lo)) return 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fvspectra
