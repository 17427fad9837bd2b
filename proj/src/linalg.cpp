#include "fvspectra/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "fvspectra/error.hpp"

namespace fvspectra {

namespace {

void require_finite(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) throw Error(ErrorKind::NonSquare, std::string(op) + " needs a square matrix");
}

// Roots of z^2 - tr z + det. The larger root is formed without cancellation
// and the smaller one recovered from the product.
std::pair<Complex, Complex> quadratic_roots(Complex tr, Complex det) {
  const Complex half = 0.5 * tr;
  Complex d = std::sqrt(half * half - det);
  if (std::real(std::conj(half) * d) < 0.0) d = -d;
  const Complex big = half + d;
  if (big == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
  return {big, det / big};
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))) {
  if (rows == 0 || cols == 0) throw Error(ErrorKind::ZeroSize, "matrix dimensions must be >= 1");
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd values) : m_(std::move(values)) {
  if (m_.rows() == 0 || m_.cols() == 0) throw Error(ErrorKind::ZeroSize, "matrix dimensions must be >= 1");
  require_finite(m_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = n_rows == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  if (n_rows == 0 || n_cols == 0) throw Error(ErrorKind::ZeroSize, "matrix dimensions must be >= 1");
  m_.resize(n_rows, n_cols);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n_cols)
      throw Error(ErrorKind::BadArgs, "ragged initializer list");
    Eigen::Index j = 0;
    for (const auto& v : row) m_(i, j++) = v;
    ++i;
  }
  require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix((a.m_ + b.m_).eval());
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix((a.m_ - b.m_).eval());
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::BadArgs, "nonconformable product");
  return ComplexMatrix((a.m_ * b.m_).eval());
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix((s * a.m_).eval()); }

Spectrum eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues");
  const std::size_t n = a.rows();
  if (n > 64) throw Error(ErrorKind::BadArgs, "eigenvalues supports dimension <= 64");

  Spectrum out;
  if (n == 1) {
    out.eigenvalues = {a(0, 0)};
  } else if (n == 2) {
    const Complex tr = a(0, 0) + a(1, 1);
    const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    auto [l1, l2] = quadratic_roots(tr, det);
    out.eigenvalues = {l1, l2};
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a.eigen(), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorKind::IterationLimit, "complex QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  }
  out.converged.assign(n, true);
  return out;
}

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm");
  Eigen::MatrixXcd result = a.eigen().exp();
  if (!result.allFinite()) throw Error(ErrorKind::NonFinite, "matrix exponential overflowed");
  return ComplexMatrix(std::move(result));
}

double opnorm2(const ComplexMatrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.eigen());
  return svd.singularValues()(0);
}

std::vector<Complex> solve_min_norm(const ComplexMatrix& a, std::span<const Complex> b, double rank_tol) {
  if (b.size() != a.rows()) throw Error(ErrorKind::BadArgs, "right-hand side length does not match rows");
  const Eigen::Map<const Eigen::VectorXcd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.eigen(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_tol * sv(0);
  Eigen::VectorXcd coeffs = svd.matrixU().adjoint() * rhs;
  for (Eigen::Index i = 0; i < sv.size(); ++i) coeffs(i) = sv(i) > cutoff ? coeffs(i) / sv(i) : Complex(0.0);
  Eigen::VectorXcd x = svd.matrixV() * coeffs;

  const double residual = (a.eigen() * x - rhs).norm();
  if (residual > rank_tol * rhs.norm())
    throw Error(ErrorKind::Inconsistent, "right-hand side is not in the range of the matrix");
  return {x.data(), x.data() + x.size()};
}

}  // namespace fvspectra
