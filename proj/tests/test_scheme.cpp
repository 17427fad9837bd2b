#include <doctest.h>

#include <cmath>
#include <random>

#include "fvspectra/error.hpp"
#include "fvspectra/scheme.hpp"
#include "oracles.hpp"

using namespace fvspectra;

namespace {

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  double scale = 0.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= tol * scale);
}

std::vector<double> random_steps(std::mt19937& rng, std::size_t count) {
  std::uniform_real_distribution<double> d(0.2, 2.0);
  std::vector<double> h(count);
  for (double& v : h) v = d(rng);
  return h;
}

const std::vector<std::pair<std::string, Scheme>>& builtins() {
  static const std::vector<std::pair<std::string, Scheme>> all{
      {"fv0", fv_polynomial(0)}, {"fv2", fv_polynomial(2)}, {"fv4", fv_polynomial(4)},
      {"fv6", fv_polynomial(6)}, {"r3", r3()},              {"r5", r5()}};
  return all;
}

}  // namespace

TEST_CASE("uniform coefficients") {
  const std::vector<double> fv2{1.0 / 6, -1.0, 1.0 / 2, 1.0 / 3, 0.0};
  check_close(uniform_symbol(fv_polynomial(2)).coefficients, fv2, 1e-13);
  check_close(uniform_symbol(r3()).coefficients, fv2, 1e-13);
  check_close(uniform_symbol(r5()).coefficients,
              {-2.0 / 60, 15.0 / 60, -60.0 / 60, 20.0 / 60, 30.0 / 60, -3.0 / 60, 0.0}, 1e-13);
  check_close(uniform_symbol(fv_polynomial(0)).coefficients, {-1.0, 1.0, 0.0}, 1e-14);

  const auto fv0 = fv_polynomial(0).coefficients(std::vector<double>{0.5, 2.0});
  check_close(fv0, {-0.5, 0.5, 0.0}, 1e-14);
}

TEST_CASE("scheme metadata and errors") {
  CHECK(fv_polynomial(4).half_width() == 3);
  CHECK(fv_polynomial(2).mapping_kind() == MappingKind::CellAverage);
  CHECK(r3().mapping_kind() == MappingKind::PointValue);
  CHECK(r5().half_width() == 3);
  CHECK(scheme_by_name("fv4").name() == "fv4");
  CHECK(scheme_by_name("r5").name() == "r5");
  for (const char* bad : {"fv", "fv3", "fv-2", "r4", "upwind", "fv2x"}) {
    try {
      scheme_by_name(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::UnknownScheme || e.kind() == ErrorKind::OddP));
    }
  }
  CHECK_THROWS_AS(fv_polynomial(3), Error);
  try {
    fv_polynomial(1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OddP);
  }
  CHECK_THROWS_AS(r3().coefficients(std::vector<double>{1, 1, 1}), Error);
}

TEST_CASE("fv coefficients agree with primitive interpolation") {
  std::mt19937 rng(11);
  for (int p : {0, 2, 4, 6}) {
    const auto scheme = fv_polynomial(p);
    for (int trial = 0; trial < 50; ++trial) {
      const auto h = random_steps(rng, static_cast<std::size_t>(2 * scheme.half_width()));
      check_close(scheme.coefficients(h), oracle::fv_coefficients_by_primitive(p, h), 1e-10);
    }
  }
}

TEST_CASE("r3 and r5 agree with the flux formula") {
  std::mt19937 rng(12);
  const std::vector<std::pair<int, double>> beta3{{0, 2.0 / 3}, {-1, 1.0 / 3}};
  const std::vector<std::pair<int, double>> beta5{{1, -0.1}, {0, 0.8}, {-1, 11.0 / 30}, {-2, -1.0 / 15}};
  for (int trial = 0; trial < 50; ++trial) {
    const auto h3 = random_steps(rng, 4);
    check_close(r3().coefficients(h3), oracle::divided_difference_by_flux(beta3, 2, h3), 1e-13);
    const auto h5 = random_steps(rng, 6);
    check_close(r5().coefficients(h5), oracle::divided_difference_by_flux(beta5, 3, h5), 1e-13);
  }
}

TEST_CASE("consistency and homogeneity on random steps") {
  std::mt19937 rng(13);
  for (const auto& [name, scheme] : builtins()) {
    CAPTURE(name);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto h = random_steps(rng, static_cast<std::size_t>(2 * scheme.half_width()));
      const auto a = scheme.coefficients(h);
      double sum = 0.0;
      double amax = 0.0;
      for (double v : a) {
        sum += v;
        amax = std::max(amax, std::abs(v));
      }
      CHECK(std::abs(sum) <= 1e-12 * amax);
      for (double alpha : {0.5, 2.0, 3.0}) {
        std::vector<double> scaled = h;
        for (double& v : scaled) v *= alpha;
        const auto b = scheme.coefficients(scaled);
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(b[k] * alpha - a[k]) <= 1e-12 * amax);
      }
    }
  }
}

TEST_CASE("constant steps give scaled uniform coefficients") {
  for (const auto& [name, scheme] : builtins()) {
    const auto ring = uniform_symbol(scheme).coefficients;
    const auto a = scheme.coefficients(std::vector<double>(static_cast<std::size_t>(2 * scheme.half_width()), 0.25));
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(ring[k] / 0.25).epsilon(1e-12));
  }
}

TEST_CASE("uniform symbol moments and values") {
  for (const auto& [name, scheme] : builtins()) {
    CAPTURE(name);
    const auto sym = uniform_symbol(scheme);
    double m0 = 0.0;
    double m1 = 0.0;
    for (int k = -sym.half_width; k <= sym.half_width; ++k) {
      m0 += sym.coefficient(k);
      m1 += k * sym.coefficient(k);
    }
    CHECK(std::abs(m0) < 1e-12);
    CHECK(std::abs(m1 - 1.0) < 1e-12);
    CHECK(std::abs(sym(0.0)) < 1e-12);
    for (double phi : {0.3, 1.7, 4.0})
      CHECK(std::abs(sym(phi) - oracle::uniform_symbol(sym.coefficients, phi)) < 1e-14);
  }
  CHECK(uniform_symbol(fv_polynomial(2))(M_PI).real() == doctest::Approx(4.0 / 3).epsilon(1e-13));
  CHECK(uniform_symbol(r5())(M_PI).real() == doctest::Approx(16.0 / 15).epsilon(1e-13));
}

TEST_CASE("dissipation orders") {
  CHECK(dissipation_order(fv_polynomial(0)) == 1);
  CHECK(dissipation_order(fv_polynomial(2)) == 3);
  CHECK(dissipation_order(fv_polynomial(4)) == 5);
  CHECK(dissipation_order(fv_polynomial(6)) == 7);
  CHECK(dissipation_order(r3()) == 3);
  CHECK(dissipation_order(r5()) == 5);
  const auto central = constant_stencil("central", {-0.5, 0.0, 0.5}, 2);
  try {
    dissipation_order(central);
    FAIL("central scheme has no dissipation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoDissipation);
  }
}

TEST_CASE("dissipation order agrees with a direct fit of Re lambda") {
  for (const auto& [name, scheme] : builtins()) {
    CAPTURE(name);
    const auto sym = uniform_symbol(scheme);
    const int kappa = dissipation_order(scheme);
    const double phi = 0.1;
    const double ratio = sym(2 * phi).real() / sym(phi).real();
    CHECK(std::log2(ratio) == doctest::Approx(kappa + 1).epsilon(0.01));
  }
}

TEST_CASE("strict dissipativity") {
  CHECK(strict_dissipativity_check(fv_polynomial(2), 256).strictly_dissipative);
  CHECK(strict_dissipativity_check(fv_polynomial(4), 256).strictly_dissipative);
  CHECK(strict_dissipativity_check(r5(), 64).strictly_dissipative);
  const auto central = strict_dissipativity_check(constant_stencil("central", {-0.5, 0.0, 0.5}, 2), 128);
  CHECK_FALSE(central.strictly_dissipative);
  CHECK(std::abs(central.min_real_part) < 1e-15);
  CHECK_THROWS_AS(strict_dissipativity_check(r3(), 63), Error);
}

TEST_CASE("Re lambda of fv schemes is proportional to sin^(2s+2)(phi/2)") {
  // Coefficients recovered as rationals; Re lambda = -2 sum a_k sin^2(k phi/2)
  // summed in long double.
  auto rational = [](double x) {
    long double best = 0.0L;
    for (long q = 1; q <= 100000; ++q) {
      const long double cand = std::round(static_cast<long double>(x) * q) / q;
      if (std::abs(cand - x) <= 1e-13) {
        best = cand;
        break;
      }
    }
    return best;
  };
  for (int s : {0, 1, 2, 3}) {
    CAPTURE(s);
    const auto sym = uniform_symbol(fv_polynomial(2 * s));
    std::vector<long double> exact;
    for (double a : sym.coefficients) {
      exact.push_back(rational(a));
      CHECK(std::abs(exact.back() - a) <= 1e-13);
    }
    auto re = [&](long double phi) {
      long double sum = 0.0L;
      for (int k = -sym.half_width; k <= sym.half_width; ++k) {
        const long double h = std::sin(k * phi / 2);
        sum += exact[static_cast<std::size_t>(k + sym.half_width)] * h * h;
      }
      return -2 * sum;
    };
    auto ratio = [&](long double phi) { return re(phi) / std::pow(std::sin(phi / 2), 2 * s + 2); };
    const long double ref = ratio(M_PIl);
    CHECK(static_cast<double>(ref) == doctest::Approx(sym(M_PI).real()).epsilon(1e-13));
    for (int i = 1; i < 64; ++i) {
      const long double phi = 2 * M_PIl * i / 64;
      CHECK(static_cast<double>(std::abs(ratio(phi) - ref)) <= 1e-10 * static_cast<double>(ref));
    }
  }
  const auto fv2 = uniform_symbol(fv_polynomial(2));
  CHECK(fv2(M_PI).real() == doctest::Approx(4.0 / 3));
}
