#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fvspectra/linalg.hpp"
#include "fvspectra/mesh.hpp"
#include "fvspectra/scheme.hpp"

namespace fvspectra {

/// The matrices L_zeta(gamma) of a scheme on an m-periodic structure, for
/// zeta in [-ceil(S/m), ceil(S/m)], and the symbol
/// L(gamma, phi) = sum_zeta L_zeta e^{i phi m zeta}.
class BlockSymbol {
 public:
  static BlockSymbol assemble(const Scheme& scheme, const MeshStructure& structure);

  const std::string& scheme_name() const { return scheme_name_; }
  const MeshStructure& structure() const { return structure_; }
  std::size_t period() const { return structure_.period(); }
  int zeta_max() const { return zeta_max_; }
  /// L_zeta; zero outside the stored range.
  Eigen::MatrixXd matrix(int zeta) const;

  ComplexMatrix symbol(double phi) const;
  ComplexMatrix symbol(Complex phi) const;

 private:
  BlockSymbol(std::string name, MeshStructure structure, int zeta_max, std::vector<Eigen::MatrixXd> matrices);

  std::string scheme_name_;
  MeshStructure structure_;
  int zeta_max_;
  std::vector<Eigen::MatrixXd> matrices_;  // index zeta + zeta_max
  Eigen::MatrixXd at_zero_;                // L(gamma, 0)
};

/// Block symbol of `scheme` on the structure of `mesh` (steps normalized by h_av).
BlockSymbol block_matrices(const Scheme& scheme, const PeriodicMesh& mesh);

/// (S_m(phi))_{jk} = m^{-1/2} exp(2 pi i j k / m + i phi j)
ComplexMatrix fourier_basis(std::size_t m, double phi);

/// A mesh function viewed as N/m consecutive blocks of length m.
struct BlockFunction {
  std::size_t m = 1;
  std::vector<std::vector<Complex>> blocks;

  static BlockFunction from_mesh_function(std::span<const Complex> u, std::size_t m);
  MeshFunction to_mesh_function() const;
};

/// Fourier images V_hat(phi_k), phi_k = 2 pi k / N, k = 0..N/m-1.
struct BlockSpectrum {
  std::size_t m = 1;
  std::vector<double> phis;
  std::vector<std::vector<Complex>> values;
};

/// V_hat(phi) = (m/N) sum_eta e^{-i m phi eta} V_eta
BlockSpectrum block_dft(const BlockFunction& v);
/// V_eta = sum_phi e^{i m phi eta} V_hat(phi)
BlockFunction inverse_block_dft(const BlockSpectrum& spectrum);

}  // namespace fvspectra
