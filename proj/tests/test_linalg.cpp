#include <doctest.h>

#include <random>

#include "fvspectra/block.hpp"
#include "fvspectra/error.hpp"
#include "fvspectra/linalg.hpp"
#include "oracles.hpp"

using namespace fvspectra;

namespace {

bool contains(const std::vector<Complex>& values, Complex target, double tol) {
  for (const auto& v : values)
    if (std::abs(v - target) <= tol) return true;
  return false;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("construction rejects empty and non-finite matrices") {
  CHECK_THROWS_AS(ComplexMatrix(0, 2), Error);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(ComplexMatrix{bad}, Error);
}

TEST_CASE("eigenvalues of small closed-form matrices") {
  const auto perm = eigenvalues(ComplexMatrix{{0, 1}, {1, 0}}).eigenvalues;
  CHECK(contains(perm, 1.0, 1e-14));
  CHECK(contains(perm, -1.0, 1e-14));

  const Complex c(2.0, -1.0), d(-0.5, 3.0);
  const auto diag = eigenvalues(ComplexMatrix{{c, 0}, {0, d}}).eigenvalues;
  CHECK(contains(diag, c, 1e-14));
  CHECK(contains(diag, d, 1e-14));

  CHECK(eigenvalues(ComplexMatrix{{Complex(4, 2)}}).eigenvalues.at(0) == Complex(4, 2));

  try {
    eigenvalues(ComplexMatrix(2, 3));
    FAIL("expected NonSquare");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonSquare);
  }
}

TEST_CASE("eigenvalues of the fv2 symbol at phi = 0 on a uniform period-2 view") {
  const auto bs = BlockSymbol::assemble(fv_polynomial(2), MeshStructure{{0.0, 0.0}});
  const auto ev = eigenvalues(bs.symbol(0.0)).eigenvalues;
  const std::vector<double> a{1.0 / 6, -1.0, 0.5, 1.0 / 3, 0.0};
  CHECK(contains(ev, oracle::uniform_symbol(a, 0.0), 1e-12));
  CHECK(contains(ev, oracle::uniform_symbol(a, M_PI), 1e-12));
  CHECK(contains(ev, 4.0 / 3.0, 1e-12));
}

TEST_CASE("eigenvalue sum equals trace and product equals determinant on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const ComplexMatrix a(oracle::random_matrix(rng, n, n));
    const auto ev = eigenvalues(a).eigenvalues;
    REQUIRE(ev.size() == static_cast<std::size_t>(n));
    Complex sum = 0.0, prod = 1.0;
    for (const auto& v : ev) {
      sum += v;
      prod *= v;
    }
    CHECK(std::abs(sum - a.trace()) <= 1e-9);
    const Complex det = a.eigen().determinant();
    CHECK(std::abs(prod - det) <= 1e-8 * std::max(1.0, std::abs(det)));
  }
}

TEST_CASE("expm closed forms") {
  CHECK(max_abs_diff(expm(ComplexMatrix(3, 3)), ComplexMatrix::identity(3)) < 1e-15);
  const Complex a(0.3, 1.2), b(-2.0, 0.5);
  const auto d = expm(ComplexMatrix{{a, 0}, {0, b}});
  CHECK(std::abs(d(0, 0) - std::exp(a)) < 1e-13);
  CHECK(std::abs(d(1, 1) - std::exp(b)) < 1e-13);
  CHECK(std::abs(d(0, 1)) < 1e-15);
  CHECK(max_abs_diff(expm(ComplexMatrix{{0, 1}, {0, 0}}), ComplexMatrix{{1, 1}, {0, 1}}) < 1e-15);
}

TEST_CASE("expm(A) expm(-A) is the identity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    Eigen::MatrixXcd raw = oracle::random_matrix(rng, n, n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(raw);
    raw *= (1.0 + 9.0 * (trial % 10) / 9.0) / svd.singularValues()(0);  // norm in [1, 10]
    const ComplexMatrix a(raw);
    const auto product = expm(a) * expm(Complex(-1.0) * a);
    CHECK(max_abs_diff(product, ComplexMatrix::identity(static_cast<std::size_t>(n))) < 1e-9);
  }
}

TEST_CASE("expm reports overflow") {
  try {
    expm(ComplexMatrix{{Complex(1000.0)}});
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("opnorm2") {
  CHECK(opnorm2(ComplexMatrix{{3, 0}, {0, 4}}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(opnorm2(ComplexMatrix{{0, 2}, {0, 0}}) == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t m = 1; m <= 6; ++m) CHECK(std::abs(opnorm2(fourier_basis(m, 0.37)) - 1.0) < 1e-12);
}

TEST_CASE("opnorm2 is invariant under unitary factors") {
  std::mt19937 rng(3);
  for (std::size_t m = 1; m <= 6; ++m) {
    const ComplexMatrix a(oracle::random_matrix(rng, static_cast<int>(m), static_cast<int>(m)));
    const auto u = fourier_basis(m, 0.8);
    const auto v = fourier_basis(m, -2.1).adjoint();
    CHECK(std::abs(opnorm2(u * a * v) - opnorm2(a)) < 1e-10 * opnorm2(a));
  }
}

TEST_CASE("solve_min_norm examples") {
  const std::vector<Complex> b{Complex(1, 2), Complex(-3, 0.5)};
  const auto x = solve_min_norm(ComplexMatrix::identity(2), b);
  CHECK(std::abs(x[0] - b[0]) < 1e-14);
  CHECK(std::abs(x[1] - b[1]) < 1e-14);

  const ComplexMatrix ones{{1, 1}, {1, 1}};
  const auto y = solve_min_norm(ones, std::vector<Complex>{2, 2});
  CHECK(std::abs(y[0] - 1.0) < 1e-12);
  CHECK(std::abs(y[1] - 1.0) < 1e-12);

  try {
    solve_min_norm(ones, std::vector<Complex>{1, -1});
    FAIL("expected Inconsistent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Inconsistent);
  }
}

TEST_CASE("solve_min_norm returns the minimum-norm solution of rank-deficient systems") {
  std::mt19937 rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4;
    const int rank = 1 + trial % (n - 1);
    const Eigen::MatrixXcd a = oracle::random_matrix(rng, n, rank) * oracle::random_matrix(rng, rank, n);
    const Eigen::VectorXcd x_true = oracle::random_matrix(rng, n, 1);
    const Eigen::VectorXcd b = a * x_true;
    const auto x_vec = solve_min_norm(ComplexMatrix(a), std::vector<Complex>(b.data(), b.data() + n));
    const Eigen::Map<const Eigen::VectorXcd> x(x_vec.data(), n);
    CHECK((a * x - b).norm() <= 1e-8 * b.norm());

    // Brute force: random null-space directions never shorten the solution.
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
    const Eigen::MatrixXcd kernel = lu.kernel();
    for (int probe = 0; probe < 200; ++probe) {
      Eigen::VectorXcd coeff(kernel.cols());
      for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = Complex(normal(rng), normal(rng)) * 0.3;
      CHECK((x + kernel * coeff).norm() >= x.norm() - 1e-10);
    }
  }
}
