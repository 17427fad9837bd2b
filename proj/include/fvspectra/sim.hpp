#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvspectra/functions.hpp"
#include "fvspectra/linalg.hpp"
#include "fvspectra/mesh.hpp"
#include "fvspectra/scheme.hpp"

namespace fvspectra {

/// The semi-discrete operator (L u)_j = sum_k a_k u_{j+k} on a concrete mesh.
class SpatialOperator {
 public:
  SpatialOperator(const Scheme& scheme, const PeriodicMesh& mesh);

  std::size_t size() const { return n_; }
  void apply(std::span<const Complex> u, std::span<Complex> out) const;
  ComplexMatrix dense() const;

 private:
  std::size_t n_;
  int s_;
  std::vector<double> table_;  // row-major, n_ x (2 s_ + 1)
};

/// Cell averages or point samples of v0, following the scheme's mapping kind.
MeshFunction project_initial(const SmoothFunction& v0, const PeriodicMesh& mesh, const Scheme& scheme);

/// u + sum_{k=1..rk_order} (-tau L)^k u / k!
MeshFunction step(const SpatialOperator& op, std::span<const Complex> u, double tau, int rk_order);

struct SimConfig {
  std::string scheme = "fv2";
  std::size_t n = 20;
  double xi = 0.0;
  std::optional<std::vector<double>> steps;
  std::string initial = "sin";
  double t_end = 1.0;
  double courant = 0.1;
  int rk_order = 7;

  void validate() const;
  PeriodicMesh mesh() const;
};

using Observer = std::function<void(double t, std::span<const Complex> u)>;

/// Advances u0 to t_end with tau = courant * h_min, shortening the last step.
/// Throws BlowupError when |u|_av exceeds 1e6 |u0|_av.
MeshFunction integrate(const Scheme& scheme, const PeriodicMesh& mesh, MeshFunction u0, double t_end, double courant,
                       int rk_order, const Observer& observer = {});
MeshFunction integrate(const SimConfig& cfg, const Observer& observer = {});

/// The scheme's mapping of v0(x - t).
MeshFunction reference_solution(const SmoothFunction& v0, const PeriodicMesh& mesh, const Scheme& scheme, double t);

struct ConvergenceRow {
  double ratio = 1.0;
  std::size_t n = 0;
  double h_av = 0.0;
  double error = 0.0;
  std::optional<double> order;
};

struct ConvergenceTable {
  std::string scheme;
  std::vector<double> ratios;
  std::vector<std::size_t> sizes;
  std::vector<ConvergenceRow> rows;  // ratio-major

  const ConvergenceRow& at(std::size_t ratio_index, std::size_t size_index) const {
    return rows[ratio_index * sizes.size() + size_index];
  }
};

/// For each ratio r = h_max/h_min (xi = (r-1)/(r+1)) and each N: error of
/// integrate() against reference_solution() in the weighted norm.
ConvergenceTable convergence_study(const Scheme& scheme, const std::vector<double>& ratios,
                                   const std::vector<std::size_t>& sizes, const SimConfig& defaults = {});

}  // namespace fvspectra
