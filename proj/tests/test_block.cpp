#include <doctest.h>

#include <cmath>
#include <random>

#include "fvspectra/block.hpp"
#include "fvspectra/error.hpp"
#include "fvspectra/sim.hpp"
#include "oracles.hpp"

using namespace fvspectra;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

MeshFunction random_function(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> d;
  MeshFunction u(n);
  for (auto& v : u) v = Complex(d(rng), d(rng));
  return u;
}

}  // namespace

TEST_CASE("block matrices of fv2 on alternating meshes") {
  for (double xi : {0.0, 0.1, 0.5, 0.9}) {
    CAPTURE(xi);
    const auto bs = block_matrices(fv_polynomial(2), PeriodicMesh::alternating(20, xi));
    if (xi == 0.0) continue;
    REQUIRE(bs.period() == 2);
    for (int zeta = -2; zeta <= 2; ++zeta)
      CHECK((bs.matrix(zeta) - oracle::explicit_fv2(zeta, xi)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("fv2 block matrices at xi = 0 match the formula with m = 2") {
  const auto bs = BlockSymbol::assemble(fv_polynomial(2), MeshStructure{{0.0, 0.0}});
  for (int zeta = -1; zeta <= 1; ++zeta) CHECK((bs.matrix(zeta) - oracle::explicit_fv2(zeta, 0.0)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("block matrices of r3 and r5 on alternating meshes") {
  for (double xi : {0.2, 0.4, 0.6}) {
    CAPTURE(xi);
    const auto b3 = BlockSymbol::assemble(r3(), MeshStructure::alternating(xi));
    const auto b5 = BlockSymbol::assemble(r5(), MeshStructure::alternating(xi));
    CHECK(b3.zeta_max() == 1);
    CHECK(b5.zeta_max() == 2);
    for (int zeta = -2; zeta <= 2; ++zeta) {
      CHECK((b3.matrix(zeta) - oracle::explicit_r3(zeta, xi)).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((b5.matrix(zeta) - oracle::explicit_r5(zeta, xi)).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("uniform structures give scalar blocks") {
  for (const auto& scheme : {fv_polynomial(2), r3(), r5()}) {
    const auto bs = block_matrices(scheme, PeriodicMesh::uniform(16));
    const auto ring = uniform_symbol(scheme);
    REQUIRE(bs.period() == 1);
    for (int zeta = -4; zeta <= 4; ++zeta) CHECK(bs.matrix(zeta)(0, 0) == doctest::Approx(ring.coefficient(zeta)).epsilon(1e-13));
    for (double phi : {0.0, 0.4, 2.5}) CHECK(std::abs(bs.symbol(phi)(0, 0) - ring(phi)) < 1e-13);
  }
}

TEST_CASE("block matrices do not depend on h_av") {
  const auto a = block_matrices(r5(), PeriodicMesh::from_steps({3, 2, 1, 3, 2, 1}));
  const auto b = block_matrices(r5(), PeriodicMesh::from_steps({3, 2, 1, 3, 2, 1, 3, 2, 1, 3, 2, 1}));
  for (int zeta = -a.zeta_max(); zeta <= a.zeta_max(); ++zeta)
    CHECK((a.matrix(zeta) - b.matrix(zeta)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("symbol at zero is the real sum of blocks and is periodic in phi") {
  std::mt19937 rng(21);
  for (std::size_t m : {2u, 3u, 4u}) {
    const auto gamma = oracle::random_structure(rng, m, 0.4);
    for (const auto& scheme : {fv_polynomial(2), fv_polynomial(4), r3(), r5()}) {
      const auto bs = BlockSymbol::assemble(scheme, gamma);
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (int zeta = -bs.zeta_max(); zeta <= bs.zeta_max(); ++zeta) sum += bs.matrix(zeta);
      CHECK(max_abs(bs.symbol(0.0).eigen() - sum.cast<Complex>()) < 1e-14);
      for (double phi : {0.1, 0.9, 2.0}) {
        const Eigen::MatrixXcd d = bs.symbol(phi + kTwoPi / static_cast<double>(m)).eigen() - bs.symbol(phi).eigen();
        CHECK(max_abs(d) < 1e-12);
      }
    }
  }
}

TEST_CASE("fourier basis") {
  const auto s2 = fourier_basis(2, 0.0);
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs(s2(0, 0) - r) < 1e-15);
  CHECK(std::abs(s2(0, 1) - r) < 1e-15);
  CHECK(std::abs(s2(1, 0) - r) < 1e-15);
  CHECK(std::abs(s2(1, 1) + r) < 1e-15);
  CHECK(std::abs(fourier_basis(1, 1.3)(0, 0) - 1.0) < 1e-15);
  for (std::size_t m = 1; m <= 8; ++m)
    for (double phi : {0.0, 0.37, 1.9}) {
      const auto s = fourier_basis(m, phi).eigen();
      const auto id = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      CHECK(max_abs(s.adjoint() * s - id) < 1e-12);
    }
}

TEST_CASE("undeformed structures are diagonalized by the fourier basis") {
  for (std::size_t m : {2u, 3u, 4u}) {
    const MeshStructure flat{std::vector<double>(m, 0.0)};
    for (const auto& scheme : {fv_polynomial(2), fv_polynomial(4), r3(), r5()}) {
      const auto bs = BlockSymbol::assemble(scheme, flat);
      const auto ring = uniform_symbol(scheme);
      for (int i = 0; i < 32; ++i) {
        const double phi = kTwoPi * i / (32.0 * static_cast<double>(m));
        const auto s = fourier_basis(m, phi).eigen();
        Eigen::MatrixXcd d = s.adjoint() * bs.symbol(phi).eigen() * s;
        for (std::size_t l = 0; l < m; ++l) {
          const auto li = static_cast<Eigen::Index>(l);
          CHECK(std::abs(d(li, li) - ring(phi + kTwoPi * static_cast<double>(l) / static_cast<double>(m))) < 1e-10);
          d(li, li) = 0.0;
        }
        CHECK(max_abs(d) < 1e-10);
      }
    }
  }
}

TEST_CASE("fv2 eigenvalues on the undeformed period-2 structure") {
  const auto bs = BlockSymbol::assemble(fv_polynomial(2), MeshStructure{{0.0, 0.0}});
  const auto ring = uniform_symbol(fv_polynomial(2));
  for (double phi : {0.05, 0.5, 1.2, 3.0}) {
    auto ev = eigenvalues(bs.symbol(phi)).eigenvalues;
    const Complex a = ring(phi);
    const Complex b = ring(phi + M_PI);
    const bool direct = std::abs(ev[0] - a) < 1e-10 && std::abs(ev[1] - b) < 1e-10;
    const bool swapped = std::abs(ev[0] - b) < 1e-10 && std::abs(ev[1] - a) < 1e-10;
    CHECK((direct || swapped));
  }
}

TEST_CASE("control volumes are a left null vector of the symbol at zero") {
  std::mt19937 rng(22);
  for (std::size_t m : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto gamma = oracle::random_structure(rng, m, 0.4);
      for (const auto& scheme : {fv_polynomial(0), fv_polynomial(2), fv_polynomial(4), r3(), r5()}) {
        REQUIRE(scheme.flux_form());
        const auto bs = BlockSymbol::assemble(scheme, gamma);
        Eigen::RowVectorXcd h(static_cast<Eigen::Index>(m));
        for (std::size_t j = 0; j < m; ++j) {
          const double right = 1.0 + gamma.gamma[j];
          const double left = 1.0 + gamma.gamma[(j + m - 1) % m];
          h(static_cast<Eigen::Index>(j)) = scheme.mapping_kind() == MappingKind::CellAverage ? right : 0.5 * (left + right);
        }
        CHECK((h * bs.symbol(0.0).eigen()).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("blocking commutes with the operator") {
  std::mt19937 rng(23);
  for (std::size_t m : {2u, 3u, 4u}) {
    const auto gamma = oracle::random_structure(rng, m, 0.4);
    const auto mesh = PeriodicMesh::from_structure(gamma, 6);
    for (const auto& scheme : {fv_polynomial(2), r3(), r5()}) {
      const SpatialOperator op(scheme, mesh);
      const auto bs = block_matrices(scheme, mesh);
      const auto u = random_function(rng, mesh.size());
      MeshFunction lu(u.size());
      op.apply(u, lu);
      const auto blocks = BlockFunction::from_mesh_function(u, m);
      const auto expected = BlockFunction::from_mesh_function(lu, m);
      const long count = static_cast<long>(blocks.blocks.size());
      for (long eta = 0; eta < count; ++eta) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
        for (int zeta = -bs.zeta_max(); zeta <= bs.zeta_max(); ++zeta) {
          const auto& v = blocks.blocks[static_cast<std::size_t>(((eta + zeta) % count + count) % count)];
          acc += bs.matrix(zeta).cast<Complex>() * Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(m));
        }
        acc /= mesh.h_av();
        for (std::size_t j = 0; j < m; ++j)
          CHECK(std::abs(acc(static_cast<Eigen::Index>(j)) - expected.blocks[static_cast<std::size_t>(eta)][j]) < 1e-12 / mesh.h_av());
      }
    }
  }
}

TEST_CASE("block functions") {
  const MeshFunction u{1, 2, 3, 4, 5, 6};
  const auto b = BlockFunction::from_mesh_function(u, 3);
  REQUIRE(b.blocks.size() == 2);
  CHECK(b.blocks[1][0] == Complex(4));
  CHECK(b.to_mesh_function() == u);
  try {
    BlockFunction::from_mesh_function(u, 4);
    FAIL("accepted indivisible size");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeNotDivisible);
  }
}

TEST_CASE("block dft examples") {
  BlockFunction constant{2, std::vector<std::vector<Complex>>(6, {Complex(1.5), Complex(-2.0)})};
  const auto spec = block_dft(constant);
  REQUIRE(spec.phis.size() == 6);
  CHECK(std::abs(spec.values[0][0] - 1.5) < 1e-14);
  CHECK(std::abs(spec.values[0][1] + 2.0) < 1e-14);
  for (std::size_t k = 1; k < 6; ++k)
    for (const auto& v : spec.values[k]) CHECK(std::abs(v) < 1e-14);

  BlockFunction impulse{2, std::vector<std::vector<Complex>>(6, {Complex(0), Complex(0)})};
  impulse.blocks[2] = {Complex(1), Complex(0)};
  const auto flat = block_dft(impulse);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(flat.values[k][0]) == doctest::Approx(2.0 / 12));
  CHECK(flat.phis[1] == doctest::Approx(kTwoPi / 12));
}

TEST_CASE("block dft round trip and Parseval") {
  std::mt19937 rng(24);
  for (std::size_t m : {1u, 2u, 3u, 4u}) {
    const std::size_t n = 12 * m;
    const auto u = random_function(rng, n);
    const auto v = BlockFunction::from_mesh_function(u, m);
    const auto spec = block_dft(v);
    const auto back = inverse_block_dft(spec).to_mesh_function();
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(back[j] - u[j]));
    CHECK(diff < 1e-12);

    double lhs = 0.0;
    for (const auto& z : u) lhs += std::norm(z);
    lhs *= static_cast<double>(m) / static_cast<double>(n);
    double rhs = 0.0;
    for (const auto& vec : spec.values)
      for (const auto& z : vec) rhs += std::norm(z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
  }
}
