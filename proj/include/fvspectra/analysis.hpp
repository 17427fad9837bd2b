#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fvspectra/block.hpp"
#include "fvspectra/functions.hpp"
#include "fvspectra/mesh.hpp"
#include "fvspectra/scheme.hpp"

namespace fvspectra {

/// Local mapping Pi taking smooth functions to mesh functions. A corrected
/// mapping adds C_{j mod m} h_av^r f^(r)(x_j) to the base value.
struct LocalMapping {
  MappingKind kind = MappingKind::CellAverage;
  int derivative_order = 0;
  std::vector<double> correction;

  static LocalMapping cell_average() { return {MappingKind::CellAverage, 0, {}}; }
  static LocalMapping point_value() { return {MappingKind::PointValue, 0, {}}; }
  static LocalMapping for_scheme(const Scheme& scheme) { return {scheme.mapping_kind(), 0, {}}; }

  bool corrected() const { return !correction.empty(); }
  /// (Pi f)_j for any integer j, using unwrapped node positions.
  Complex value(const PeriodicMesh& mesh, const SmoothFunction& f, long j) const;
  MeshFunction apply(const PeriodicMesh& mesh, const SmoothFunction& f) const;
};

std::string to_string(const LocalMapping& mapping);

/// (1/h_{j+1/2}) * integral of f over cell j.
MeshFunction cell_average_map(const PeriodicMesh& mesh, const SmoothFunction& f);

struct TruncationError {
  MeshFunction values;
  LocalMapping mapping;
  std::string function;
};

/// eps_j = -(Pi f')_j + sum_k a_k (Pi f)_{j+k}
TruncationError truncation_error(const Scheme& scheme, const PeriodicMesh& mesh, const SmoothFunction& f,
                                 const LocalMapping& mapping);
Complex truncation_error_at(const Scheme& scheme, const PeriodicMesh& mesh, const SmoothFunction& f,
                            const LocalMapping& mapping, long j);

/// Largest q <= max_degree such that eps vanishes on all polynomials of
/// degree <= q; -1 when even constants are not reproduced.
int exactness_degree(const Scheme& scheme, const PeriodicMesh& mesh, const LocalMapping& mapping, int max_degree);

/// Corrected mapping that raises exactness from q-1 to q. Only r == q is
/// supported. Throws NotExact, BadArgs or InconsistentCorrection.
LocalMapping corrected_map(const Scheme& scheme, const PeriodicMesh& mesh, const LocalMapping& base, int r, int q);

struct ExactnessReport {
  std::string scheme;
  MeshStructure structure;
  LocalMapping base;
  int base_degree = -1;
  LocalMapping corrected;
  int corrected_degree = -1;
  /// False when the next-degree correction system had no solution.
  bool correction_applied = false;
};

ExactnessReport exactness_report(const Scheme& scheme, const MeshStructure& structure, int max_degree = 8);

/// eps_hat = (i phi I - L(gamma, phi)) v, v_j = (Pi e^{i phi x})_j on the
/// unit-h_av mesh with x_0 = 0.
std::vector<Complex> symbol_truncation(const Scheme& scheme, const MeshStructure& structure, double phi,
                                       const LocalMapping& mapping);

/// Eigenvalue of L(gamma, phi) nearest i phi. Throws BranchAmbiguity.
Complex lambda0_branch(const BlockSymbol& bs, Complex phi);

/// Non-physical eigenvalues of L(gamma, 0), by increasing modulus.
std::vector<Complex> lambda_star(const BlockSymbol& bs);

/// Taylor coefficients c_0..c_{count-1} of lambda0 at phi = 0, from the
/// trapezoidal Cauchy integral on |phi| = radius.
std::vector<Complex> lambda0_series(const BlockSymbol& bs, int count, double radius = 0.1, int nodes = 64);

struct Lambda0Expansion {
  std::vector<Complex> coefficients;  // c_1..c_order
  double residual = 0.0;
};

/// order in 1..5. The residual is the largest deviation between the branch
/// and its series on 2*order+6 Chebyshev nodes of [-0.1, 0.1].
Lambda0Expansion lambda0_taylor(const BlockSymbol& bs, int order);

struct EigenScan {
  double min_re = 0.0;
  double phi_worst = 0.0;
};

/// phi samples: uniform on [0, 2 pi/m) plus 10^-k, k = 1..4.
std::vector<double> scan_phis(std::size_t m, std::size_t grid);
EigenScan eigen_scan(const BlockSymbol& bs, std::size_t phi_grid);

struct Amplification {
  double value = 1.0;
  bool bounded = true;
  double phi = 0.0;
  double nu = 0.0;
};

/// max over phi and nu in [1e-2, nu_max(phi)] of |exp(-nu L(gamma, phi))|,
/// nu_max(phi) = 50 / max(min Re eig, 1e-6). Unbounded above 1e6.
Amplification amplification(const BlockSymbol& bs, std::size_t phi_grid, std::size_t nu_grid);

enum class Verdict { Stable, Unstable, Marginal };
std::string_view to_string(Verdict verdict);

struct Witness {
  std::string kind;  // "eigenvalue", "taylor" or "amplification"
  double phi = 0.0;
  Complex value;
  int taylor_index = 0;
  double nu = 0.0;
};

struct TheoremCondition {
  int kappa = 0;
  int exactness = 0;
  bool satisfied = false;
};

struct UniformDissipation {
  double observed = 0.0;  // Re lambda_ring(pi)
  double printed = 0.0;   // 2^s c_s
};

struct StabilityOptions {
  std::size_t phi_grid = 512;
  std::size_t nu_grid = 48;
  bool amplification = true;
};

struct StabilityReport {
  std::string scheme;
  MeshStructure gamma;
  Verdict verdict = Verdict::Stable;
  double min_re_eig = 0.0;
  double phi_worst = 0.0;
  std::vector<Complex> lambda0_taylor;  // c_1..c_5
  double taylor_residual = 0.0;
  std::vector<Complex> lambda_star_0;
  std::optional<Amplification> amplification;
  std::optional<Witness> witness;
  TheoremCondition theorem_condition;
  std::optional<UniformDissipation> uniform_dissipation;
};

StabilityReport stability_verdict(const Scheme& scheme, const MeshStructure& gamma, const StabilityOptions& options = {});

/// Bisection on xi in [0, 0.99] for the alternating structure (xi, -xi).
double max_stable_xi(const Scheme& scheme, double tol);

}  // namespace fvspectra
