#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fvspectra {

using Complex = std::complex<double>;

/// Dense complex matrix for the small symbols handled here (m <= ~32).
/// Entries are validated finite on construction.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  explicit ComplexMatrix(Eigen::MatrixXcd values);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const { return m_.rows() == m_.cols(); }

  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  Complex& operator()(std::size_t i, std::size_t j) { return m_(i, j); }

  const Eigen::MatrixXcd& eigen() const { return m_; }

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint().eval()); }
  Complex trace() const { return m_.trace(); }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

struct Spectrum {
  std::vector<Complex> eigenvalues;
  std::vector<bool> converged;
};

/// Eigenvalues of a square matrix (dimension <= 64). Closed form for
/// dimensions 1 and 2, complex Schur (Hessenberg + shifted QR) otherwise.
Spectrum eigenvalues(const ComplexMatrix& a);

/// Matrix exponential by scaling-and-squaring with a degree-13 Pade core.
/// Throws NonFinite when the result overflows.
ComplexMatrix expm(const ComplexMatrix& a);

/// Operator 2-norm (largest singular value).
double opnorm2(const ComplexMatrix& a);

/// Minimal-norm least-squares solution of A x = b. Singular values below
/// rank_tol * sigma_max are treated as zero; a residual above
/// rank_tol * |b| raises Inconsistent.
std::vector<Complex> solve_min_norm(const ComplexMatrix& a, std::span<const Complex> b,
                                    double rank_tol = 1e-8);

}  // namespace fvspectra
