#include "fvspectra/sim.hpp"

#include <algorithm>
#include <cmath>

#include "fvspectra/error.hpp"
#include "fvspectra/parallel.hpp"

namespace fvspectra {

namespace {
constexpr double kBlowup = 1e6;
}

SpatialOperator::SpatialOperator(const Scheme& scheme, const PeriodicMesh& mesh)
    : n_(mesh.size()), s_(scheme.half_width()), table_(n_ * scheme.stencil_size()) {
  std::vector<double> steps(static_cast<std::size_t>(2 * s_));
  const std::size_t width = scheme.stencil_size();
  for (std::size_t j = 0; j < n_; ++j) {
    for (long i = -s_; i < s_; ++i) steps[static_cast<std::size_t>(i + s_)] = mesh.step(static_cast<long>(j) + i);
    scheme.coefficients(steps, std::span<double>(table_).subspan(j * width, width));
  }
}

void SpatialOperator::apply(std::span<const Complex> u, std::span<Complex> out) const {
  if (u.size() != n_ || out.size() != n_) throw Error(ErrorKind::MeshMismatch, "operator and mesh function differ in size");
  const std::size_t width = static_cast<std::size_t>(2 * s_ + 1);
  const long n = static_cast<long>(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    const double* row = table_.data() + j * width;
    Complex acc = 0.0;
    for (long k = -s_; k <= s_; ++k) {
      const long idx = ((static_cast<long>(j) + k) % n + n) % n;
      acc += row[k + s_] * u[static_cast<std::size_t>(idx)];
    }
    out[j] = acc;
  }
}

ComplexMatrix SpatialOperator::dense() const {
  ComplexMatrix out(n_, n_);
  const std::size_t width = static_cast<std::size_t>(2 * s_ + 1);
  const long n = static_cast<long>(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (long k = -s_; k <= s_; ++k) {
      const long col = ((static_cast<long>(j) + k) % n + n) % n;
      out(j, static_cast<std::size_t>(col)) += table_[j * width + static_cast<std::size_t>(k + s_)];
    }
  return out;
}

MeshFunction project_initial(const SmoothFunction& v0, const PeriodicMesh& mesh, const Scheme& scheme) {
  MeshFunction out(mesh.size());
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const long jl = static_cast<long>(j);
    out[j] = scheme.mapping_kind() == MappingKind::CellAverage ? v0.cell_average(mesh.node(jl), mesh.node(jl + 1))
                                                               : v0(mesh.node(jl));
  }
  return out;
}

MeshFunction step(const SpatialOperator& op, std::span<const Complex> u, double tau, int rk_order) {
  if (!(tau > 0.0)) throw Error(ErrorKind::BadArgs, "time step must be positive");
  if (rk_order < 1) throw Error(ErrorKind::BadArgs, "rk order must be >= 1");
  // Horner: w <- u + (-tau L / k) w for k = q..1
  MeshFunction w(u.begin(), u.end());
  MeshFunction lw(u.size());
  for (int k = rk_order; k >= 1; --k) {
    op.apply(w, lw);
    const double factor = -tau / static_cast<double>(k);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = u[j] + factor * lw[j];
  }
  return w;
}

void SimConfig::validate() const {
  if (!(courant > 0.0)) throw Error(ErrorKind::BadArgs, "courant must be > 0");
  if (!(t_end >= 0.0)) throw Error(ErrorKind::BadArgs, "t_end must be >= 0");
  if (rk_order < 1 || rk_order > 12) throw Error(ErrorKind::BadArgs, "rk_order must be in 1..12");
}

PeriodicMesh SimConfig::mesh() const {
  if (steps) return PeriodicMesh::from_steps(*steps);
  return xi == 0.0 ? PeriodicMesh::uniform(n) : PeriodicMesh::alternating(n, xi);
}

MeshFunction integrate(const Scheme& scheme, const PeriodicMesh& mesh, MeshFunction u, double t_end, double courant,
                       int rk_order, const Observer& observer) {
  if (!(courant > 0.0) || !(t_end >= 0.0)) throw Error(ErrorKind::BadArgs, "invalid time-stepping parameters");
  const SpatialOperator op(scheme, mesh);
  const double tau = courant * mesh.h_min();
  const double norm0 = norm_av(u);
  double t = 0.0;
  if (observer) observer(t, u);
  while (t < t_end) {
    double dt = tau;
    bool last = false;
    if (t + dt >= t_end * (1.0 - 1e-14)) {
      dt = t_end - t;
      last = true;
    }
    if (dt <= 0.0) break;
    u = step(op, u, dt, rk_order);
    t = last ? t_end : t + dt;
    const double norm = norm_av(u);
    if (!std::isfinite(norm) || norm > kBlowup * norm0) throw BlowupError(t, norm0 > 0.0 ? norm / norm0 : norm);
    if (observer) observer(t, u);
  }
  return u;
}

MeshFunction integrate(const SimConfig& cfg, const Observer& observer) {
  cfg.validate();
  const auto scheme = scheme_by_name(cfg.scheme);
  const auto mesh = cfg.mesh();
  return integrate(scheme, mesh, project_initial(initial_function(cfg.initial), mesh, scheme), cfg.t_end, cfg.courant,
                   cfg.rk_order, observer);
}

MeshFunction reference_solution(const SmoothFunction& v0, const PeriodicMesh& mesh, const Scheme& scheme, double t) {
  return project_initial(v0.shifted(t), mesh, scheme);
}

ConvergenceTable convergence_study(const Scheme& scheme, const std::vector<double>& ratios,
                                   const std::vector<std::size_t>& sizes, const SimConfig& defaults) {
  defaults.validate();
  if (ratios.empty() || sizes.empty()) throw Error(ErrorKind::BadArgs, "ratios and sizes must be non-empty");
  for (double r : ratios)
    if (!(r >= 1.0)) throw Error(ErrorKind::BadArgs, "ratios must be >= 1");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0 || sizes[i] % 2 != 0) throw Error(ErrorKind::BadArgs, "sizes must be even");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw Error(ErrorKind::BadArgs, "sizes must increase");
  }

  ConvergenceTable table{scheme.name(), ratios, sizes, std::vector<ConvergenceRow>(ratios.size() * sizes.size())};
  const auto v0 = initial_function(defaults.initial);
  const auto weights = scheme.mapping_kind() == MappingKind::CellAverage ? ErrorWeights::Cell : ErrorWeights::Node;
  parallel_for(table.rows.size(), [&](std::size_t idx) {
    const double ratio = ratios[idx / sizes.size()];
    const std::size_t n = sizes[idx % sizes.size()];
    const auto mesh = PeriodicMesh::alternating(n, (ratio - 1.0) / (ratio + 1.0));
    const auto u = integrate(scheme, mesh, project_initial(v0, mesh, scheme), defaults.t_end, defaults.courant,
                             defaults.rk_order);
    const auto ref = reference_solution(v0, mesh, scheme, defaults.t_end);
    table.rows[idx] = ConvergenceRow{ratio, n, mesh.h_av(), weighted_error_norm(u, ref, mesh, weights), std::nullopt};
  });
  for (std::size_t r = 0; r < ratios.size(); ++r)
    for (std::size_t k = 1; k < sizes.size(); ++k) {
      auto& row = table.rows[r * sizes.size() + k];
      const auto& prev = table.rows[r * sizes.size() + k - 1];
      row.order = std::log(prev.error / row.error) /
                  std::log(static_cast<double>(row.n) / static_cast<double>(prev.n));
    }
  return table;
}

}  // namespace fvspectra
