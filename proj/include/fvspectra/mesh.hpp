#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fvspectra/linalg.hpp"

namespace fvspectra {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Per-period relative step deviations gamma_j = h_{j+1/2}/h_av - 1.
struct MeshStructure {
  std::vector<double> gamma;

  std::size_t period() const { return gamma.size(); }
  /// max_j |gamma_j|
  double magnitude() const;
  /// Structure of an alternating mesh, (xi, -xi).
  static MeshStructure alternating(double xi);
};

/// A mesh function: one complex value per node/cell, indexed by j = 0..N-1.
using MeshFunction = std::vector<Complex>;

/// 2*pi-periodic mesh with N nodes. Node x_j is the left end of cell j and
/// cell j has width h_{j+1/2} = steps()[j]. Immutable after construction.
class PeriodicMesh {
 public:
  static PeriodicMesh uniform(std::size_t n);
  static PeriodicMesh alternating(std::size_t n, double xi);
  /// Accepts any positive steps; rescales them to sum to 2*pi when needed
  /// (see rescaled()).
  static PeriodicMesh from_steps(std::vector<double> steps, double offset = 0.0);
  /// N = period * repeats nodes built from a structure.
  static PeriodicMesh from_structure(const MeshStructure& structure, std::size_t repeats);

  std::size_t size() const { return steps_.size(); }
  std::span<const double> steps() const { return steps_; }
  double offset() const { return offset_; }
  std::size_t period() const { return period_; }
  bool rescaled() const { return rescaled_; }

  double h_av() const { return kTwoPi / static_cast<double>(steps_.size()); }
  double h_min() const;
  double h_max() const;

  /// h_{j+1/2} for any integer j (periodic).
  double step(long j) const;
  /// x_j for any integer j, with x_{j+N} = x_j + 2*pi.
  double node(long j) const;

  MeshStructure structure() const;

 private:
  PeriodicMesh(std::vector<double> steps, double offset, bool rescaled);

  std::vector<double> steps_;
  std::vector<double> nodes_;  // x_0..x_{N-1}
  double offset_ = 0.0;
  std::size_t period_ = 1;
  bool rescaled_ = false;
};

/// sqrt((1/N) sum |f_j|^2)
double norm_av(std::span<const Complex> f);

enum class ErrorWeights { Cell, Node };

/// (1/sqrt(2 pi)) (sum w_j |u_j - ref_j|^2)^(1/2) with cell widths or
/// node volumes (h_{j+1/2} + h_{j-1/2})/2 as weights.
double weighted_error_norm(std::span<const Complex> u, std::span<const Complex> reference,
                           const PeriodicMesh& mesh, ErrorWeights weights);

}  // namespace fvspectra
