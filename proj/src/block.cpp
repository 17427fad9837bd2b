#include "fvspectra/block.hpp"

#include <algorithm>
#include <cmath>

#include "fvspectra/error.hpp"

namespace fvspectra {

namespace {
constexpr Complex kI{0.0, 1.0};
}

BlockSymbol::BlockSymbol(std::string name, MeshStructure structure, int zeta_max, std::vector<Eigen::MatrixXd> matrices)
    : scheme_name_(std::move(name)),
      structure_(std::move(structure)),
      zeta_max_(zeta_max),
      matrices_(std::move(matrices)) {
  // Entries of sum_zeta L_zeta that cancel exactly (all of them on a uniform
  // mesh with m = 1) are set to zero instead of keeping the rounding residue.
  const auto m = static_cast<Eigen::Index>(structure_.period());
  at_zero_ = Eigen::MatrixXd::Zero(m, m);
  double scale = 0.0;
  for (const auto& l : matrices_) {
    at_zero_ += l;
    scale = std::max(scale, l.cwiseAbs().maxCoeff());
  }
  for (Eigen::Index i = 0; i < at_zero_.size(); ++i)
    if (std::abs(at_zero_.data()[i]) <= 1e-12 * scale) at_zero_.data()[i] = 0.0;
}

BlockSymbol BlockSymbol::assemble(const Scheme& scheme, const MeshStructure& structure) {
  const long m = static_cast<long>(structure.period());
  if (m == 0) throw Error(ErrorKind::EmptyInput, "empty mesh structure");
  const int s = scheme.half_width();
  const int zeta_max = static_cast<int>((s + m - 1) / m);
  const auto m_idx = static_cast<Eigen::Index>(m);
  std::vector<Eigen::MatrixXd> matrices(static_cast<std::size_t>(2 * zeta_max + 1), Eigen::MatrixXd::Zero(m_idx, m_idx));

  std::vector<double> steps(static_cast<std::size_t>(2 * s));
  std::vector<double> coeffs(scheme.stencil_size());
  for (long j = 0; j < m; ++j) {
    for (long i = -s; i < s; ++i) {
      const long g = ((j + i) % m + m) % m;
      steps[static_cast<std::size_t>(i + s)] = 1.0 + structure.gamma[static_cast<std::size_t>(g)];
    }
    scheme.coefficients(steps, coeffs);
    for (long k = -s; k <= s; ++k) {
      // column index j + k = zeta m + col
      const long target = j + k;
      const long zeta = (target >= 0 ? target / m : -((-target + m - 1) / m));
      const long col = target - zeta * m;
      matrices[static_cast<std::size_t>(zeta + zeta_max)](j, col) += coeffs[static_cast<std::size_t>(k + s)];
    }
  }
  return BlockSymbol(scheme.name(), structure, zeta_max, std::move(matrices));
}

Eigen::MatrixXd BlockSymbol::matrix(int zeta) const {
  if (zeta < -zeta_max_ || zeta > zeta_max_) {
    const auto m = static_cast<Eigen::Index>(period());
    return Eigen::MatrixXd::Zero(m, m);
  }
  return matrices_[static_cast<std::size_t>(zeta + zeta_max_)];
}

ComplexMatrix BlockSymbol::symbol(Complex phi) const {
  const auto m = static_cast<Eigen::Index>(period());
  // L(0) + sum_zeta L_zeta (e^{i theta} - 1), e^{i theta} - 1 = 2i sin(theta/2) e^{i theta/2}
  Eigen::MatrixXcd out = at_zero_.cast<Complex>();
  for (int zeta = -zeta_max_; zeta <= zeta_max_; ++zeta) {
    if (zeta == 0) continue;
    const Complex half = 0.5 * phi * static_cast<double>(m * zeta);
    out += (2.0 * kI * std::sin(half) * std::exp(kI * half)) *
           matrices_[static_cast<std::size_t>(zeta + zeta_max_)].cast<Complex>();
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix BlockSymbol::symbol(double phi) const { return symbol(Complex(phi, 0.0)); }

BlockSymbol block_matrices(const Scheme& scheme, const PeriodicMesh& mesh) {
  return BlockSymbol::assemble(scheme, mesh.structure());
}

ComplexMatrix fourier_basis(std::size_t m, double phi) {
  if (m == 0) throw Error(ErrorKind::ZeroSize, "Fourier basis needs m >= 1");
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd s(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double angle = kTwoPi * static_cast<double>((j * k) % n) / static_cast<double>(m) + phi * static_cast<double>(j);
      s(j, k) = norm * std::polar(1.0, angle);
    }
  return ComplexMatrix(std::move(s));
}

BlockFunction BlockFunction::from_mesh_function(std::span<const Complex> u, std::size_t m) {
  if (m == 0 || u.empty() || u.size() % m != 0)
    throw Error(ErrorKind::SizeNotDivisible, "mesh function length is not a multiple of the block size");
  BlockFunction out;
  out.m = m;
  for (std::size_t eta = 0; eta < u.size() / m; ++eta) out.blocks.emplace_back(u.begin() + eta * m, u.begin() + (eta + 1) * m);
  return out;
}

MeshFunction BlockFunction::to_mesh_function() const {
  MeshFunction out;
  out.reserve(blocks.size() * m);
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

BlockSpectrum block_dft(const BlockFunction& v) {
  if (v.blocks.empty()) throw Error(ErrorKind::EmptyInput, "no blocks");
  for (const auto& b : v.blocks)
    if (b.size() != v.m) throw Error(ErrorKind::SizeNotDivisible, "block of wrong length");
  const std::size_t count = v.blocks.size();
  const double n = static_cast<double>(count * v.m);
  BlockSpectrum out;
  out.m = v.m;
  for (std::size_t k = 0; k < count; ++k) {
    out.phis.push_back(kTwoPi * static_cast<double>(k) / n);
    std::vector<Complex> acc(v.m, 0.0);
    for (std::size_t eta = 0; eta < count; ++eta) {
      const Complex w = std::polar(1.0, -kTwoPi * static_cast<double>((k * eta) % count) / static_cast<double>(count));
      for (std::size_t j = 0; j < v.m; ++j) acc[j] += w * v.blocks[eta][j];
    }
    for (auto& a : acc) a /= static_cast<double>(count);
    out.values.push_back(std::move(acc));
  }
  return out;
}

BlockFunction inverse_block_dft(const BlockSpectrum& spectrum) {
  const std::size_t count = spectrum.values.size();
  if (count == 0) throw Error(ErrorKind::EmptyInput, "empty spectrum");
  BlockFunction out;
  out.m = spectrum.m;
  for (std::size_t eta = 0; eta < count; ++eta) {
    std::vector<Complex> acc(spectrum.m, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
      if (spectrum.values[k].size() != spectrum.m) throw Error(ErrorKind::SizeNotDivisible, "spectrum entry of wrong length");
      const Complex w = std::polar(1.0, kTwoPi * static_cast<double>((k * eta) % count) / static_cast<double>(count));
      for (std::size_t j = 0; j < spectrum.m; ++j) acc[j] += w * spectrum.values[k][j];
    }
    out.blocks.push_back(std::move(acc));
  }
  return out;
}

}  // namespace fvspectra
