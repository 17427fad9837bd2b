#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fvspectra/linalg.hpp"

namespace fvspectra {

/// How a scheme's unknowns relate to the exact solution.
enum class MappingKind { CellAverage, PointValue };

std::string_view to_string(MappingKind kind);

/// A linear semi-discrete scheme du_j/dt + sum_k a_k(local steps) u_{j+k} = 0.
///
/// The coefficient map receives the 2S local steps
/// (h_{j-S+1/2}, ..., h_{j+S-1/2}) and writes a_{-S}, ..., a_S. Maps must be
/// homogeneous of degree -1 in the steps.
class Scheme {
 public:
  using CoefficientMap = std::function<void(std::span<const double> local_steps, std::span<double> coeffs)>;

  Scheme(std::string name, int half_width, CoefficientMap map, bool flux_form, MappingKind mapping_kind,
         int uniform_order);

  const std::string& name() const { return name_; }
  int half_width() const { return half_width_; }
  std::size_t stencil_size() const { return static_cast<std::size_t>(2 * half_width_ + 1); }
  bool flux_form() const { return flux_form_; }
  MappingKind mapping_kind() const { return mapping_kind_; }
  /// Formal order of accuracy on uniform meshes.
  int uniform_order() const { return uniform_order_; }

  void coefficients(std::span<const double> local_steps, std::span<double> out) const;
  std::vector<double> coefficients(std::span<const double> local_steps) const;

 private:
  std::string name_;
  int half_width_;
  CoefficientMap map_;
  bool flux_form_;
  MappingKind mapping_kind_;
  int uniform_order_;
};

/// Finite-volume scheme with polynomial reconstruction of even degree p:
/// du_j/dt + (p_j(x_{j+1}) - p_{j-1}(x_j)) / h_{j+1/2} = 0, where p_j
/// matches the cell averages on cells j - p/2 .. j + p/2.
Scheme fv_polynomial(int p);

/// Node-centred third-order divided-difference scheme.
Scheme r3();

/// Node-centred fifth-order divided-difference scheme.
Scheme r5();

/// Scheme with a_k = a_ring_k / h_{j+1/2}; `uniform_coefficients` has odd
/// length 2S+1. Used for textbook stencils.
Scheme constant_stencil(std::string name, std::vector<double> uniform_coefficients, int uniform_order);

/// "fv0", "fv2", "fv4", ..., "r3", "r5".
Scheme scheme_by_name(std::string_view name);

/// The uniform-mesh coefficients a_ring_k = a_k(1, ..., 1) and the symbol
/// lambda_ring(phi) = sum a_ring_k e^{i phi k}.
struct UniformSymbol {
  int half_width = 0;
  std::vector<double> coefficients;  // a_ring_{-S..S}

  double coefficient(int k) const;
  Complex operator()(Complex phi) const;
  /// Coefficient of phi^(2n) in the Taylor series of Re lambda_ring(phi).
  double real_taylor_coefficient(int n) const;
};

UniformSymbol uniform_symbol(const Scheme& scheme);

/// Odd kappa with Re lambda_ring(phi) = c phi^(kappa+1) + O(phi^(kappa+2)).
int dissipation_order(const Scheme& scheme);
int dissipation_order(const UniformSymbol& symbol);

struct DissipativityCheck {
  bool strictly_dissipative = false;
  double worst_phi = 0.0;
  double min_real_part = 0.0;
};

/// Tests Re lambda_ring(phi) > 0 on phi = 2 pi i / grid, i = 1..grid-1.
DissipativityCheck strict_dissipativity_check(const Scheme& scheme, std::size_t grid);

}  // namespace fvspectra
