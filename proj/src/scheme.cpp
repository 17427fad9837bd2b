#include "fvspectra/scheme.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/LU>

#include "fvspectra/error.hpp"
#include "fvspectra/mesh.hpp"

namespace fvspectra {

std::string_view to_string(MappingKind kind) {
  return kind == MappingKind::CellAverage ? "cell-average" : "point-value";
}

Scheme::Scheme(std::string name, int half_width, CoefficientMap map, bool flux_form, MappingKind mapping_kind,
               int uniform_order)
    : name_(std::move(name)),
      half_width_(half_width),
      map_(std::move(map)),
      flux_form_(flux_form),
      mapping_kind_(mapping_kind),
      uniform_order_(uniform_order) {}

void Scheme::coefficients(std::span<const double> local_steps, std::span<double> out) const {
  if (local_steps.size() != static_cast<std::size_t>(2 * half_width_) || out.size() != stencil_size())
    throw Error(ErrorKind::BadArgs, "coefficient map called with wrong stencil size");
  map_(local_steps, out);
}

std::vector<double> Scheme::coefficients(std::span<const double> local_steps) const {
  std::vector<double> out(stencil_size());
  coefficients(local_steps, out);
  return out;
}

namespace {

// Local stencil geometry around node x_j: step(i) = h_{j+i+1/2} and
// node(i) = x_{j+i} - x_j for i in [-S, S].
class LocalStencil {
 public:
  LocalStencil(std::span<const double> steps, int half_width) : steps_(steps), s_(half_width) {
    nodes_.assign(static_cast<std::size_t>(2 * s_ + 1), 0.0);
    for (int i = 0; i < s_; ++i) nodes_[idx(i + 1)] = nodes_[idx(i)] + step(i);
    for (int i = 0; i > -s_; --i) nodes_[idx(i - 1)] = nodes_[idx(i)] - step(i - 1);
  }

  double step(int i) const { return steps_[static_cast<std::size_t>(i + s_)]; }
  double node(int i) const { return nodes_[idx(i)]; }

 private:
  std::size_t idx(int i) const { return static_cast<std::size_t>(i + s_); }

  std::span<const double> steps_;
  int s_;
  std::vector<double> nodes_;
};

// Weights w_r such that the degree-p polynomial matching the averages on
// cells center-s .. center+s evaluates to sum_r w_r u_{center-s+r} at x_eval.
// The monomial basis uses the scaled variable y = (x - x_j) / scale.
Eigen::VectorXd reconstruction_weights(const LocalStencil& st, int p, int center, double x_eval, double scale) {
  const int s = p / 2;
  const int n = p + 1;
  Eigen::MatrixXd moments(n, n);
  for (int r = 0; r < n; ++r) {
    const int cell = center - s + r;
    const double a = st.node(cell) / scale;
    const double b = st.node(cell + 1) / scale;
    // (1/(b-a)) * integral_a^b y^k dy, accumulated without forming b^{k+1} - a^{k+1}.
    for (int k = 0; k < n; ++k) {
      double sum = 0.0;
      double ai = 1.0;
      for (int i = 0; i <= k; ++i) {
        double bi = 1.0;
        for (int t = 0; t < k - i; ++t) bi *= b;
        sum += ai * bi;
        ai *= a;
      }
      moments(r, k) = sum / static_cast<double>(k + 1);
    }
  }
  Eigen::VectorXd basis(n);
  const double y = x_eval / scale;
  double yk = 1.0;
  for (int k = 0; k < n; ++k, yk *= y) basis(k) = yk;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(moments.transpose());
  if (!lu.isInvertible() || lu.rcond() < 1e-13)
    throw Error(ErrorKind::SingularStencil, "moment system is singular for these steps");
  return lu.solve(basis);
}

void fv_coefficients(int p, std::span<const double> steps, std::span<double> out) {
  const int s = p / 2;
  const int half = s + 1;
  const LocalStencil st(steps, half);
  const double scale = std::accumulate(steps.begin(), steps.end(), 0.0) / static_cast<double>(steps.size());
  std::fill(out.begin(), out.end(), 0.0);

  const Eigen::VectorXd right = reconstruction_weights(st, p, 0, st.node(1), scale);
  const Eigen::VectorXd left = reconstruction_weights(st, p, -1, st.node(0), scale);
  const double inv_h = 1.0 / st.step(0);
  for (int r = 0; r <= p; ++r) {
    out[static_cast<std::size_t>(-s + r + half)] += right(r) * inv_h;
    out[static_cast<std::size_t>(-1 - s + r + half)] -= left(r) * inv_h;
  }
}

// F_{j+1/2} = u_j + (h_{j+1/2}/2) sum_l beta_l (u_{j+l+1} - u_{j+l}) / h_{j+l+1/2}
// and a = (F_{j+1/2} - F_{j-1/2}) / ((h_{j+1/2} + h_{j-1/2}) / 2).
struct DividedDifferenceFlux {
  std::map<int, double> beta;  // offset l -> weight
};

void divided_difference_coefficients(const DividedDifferenceFlux& flux, int half_width, std::span<const double> steps,
                                     std::span<double> out) {
  const LocalStencil st(steps, half_width);
  std::fill(out.begin(), out.end(), 0.0);
  auto add = [&](int k, double v) { out[static_cast<std::size_t>(k + half_width)] += v; };
  for (const auto& [face, sign] : {std::pair{0, 1.0}, std::pair{-1, -1.0}}) {
    add(face, sign);
    const double half_h = 0.5 * st.step(face);
    for (const auto& [l, beta] : flux.beta) {
      const double w = sign * half_h * beta / st.step(face + l);
      add(face + l + 1, w);
      add(face + l, -w);
    }
  }
  const double inv_vol = 2.0 / (st.step(0) + st.step(-1));
  for (double& a : out) a *= inv_vol;
}

}  // namespace

Scheme fv_polynomial(int p) {
  if (p < 0 || p % 2 != 0) throw Error(ErrorKind::OddP, "reconstruction degree must be even and >= 0");
  const int half = p / 2 + 1;
  return Scheme(
      "fv" + std::to_string(p), half,
      [p](std::span<const double> steps, std::span<double> out) { fv_coefficients(p, steps, out); },
      /*flux_form=*/true, MappingKind::CellAverage, p + 1);
}

Scheme r3() {
  static const DividedDifferenceFlux flux{{{0, 2.0 / 3.0}, {-1, 1.0 / 3.0}}};
  return Scheme(
      "r3", 2, [](std::span<const double> steps, std::span<double> out) {
        divided_difference_coefficients(flux, 2, steps, out);
      },
      /*flux_form=*/true, MappingKind::PointValue, 3);
}

Scheme r5() {
  static const DividedDifferenceFlux flux{{{1, -1.0 / 10.0}, {0, 4.0 / 5.0}, {-1, 11.0 / 30.0}, {-2, -1.0 / 15.0}}};
  return Scheme(
      "r5", 3, [](std::span<const double> steps, std::span<double> out) {
        divided_difference_coefficients(flux, 3, steps, out);
      },
      /*flux_form=*/true, MappingKind::PointValue, 5);
}

Scheme constant_stencil(std::string name, std::vector<double> uniform_coefficients, int uniform_order) {
  if (uniform_coefficients.size() % 2 == 0) throw Error(ErrorKind::BadArgs, "stencil needs odd length");
  const int half = static_cast<int>(uniform_coefficients.size() / 2);
  return Scheme(
      std::move(name), half,
      [coeffs = std::move(uniform_coefficients), half](std::span<const double> steps, std::span<double> out) {
        const double h = steps[static_cast<std::size_t>(half)];
        for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = coeffs[k] / h;
      },
      /*flux_form=*/false, MappingKind::PointValue, uniform_order);
}

Scheme scheme_by_name(std::string_view name) {
  if (name == "r3") return r3();
  if (name == "r5") return r5();
  if (name.size() > 2 && name.substr(0, 2) == "fv") {
    int p = -1;
    const auto digits = name.substr(2);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return fv_polynomial(p);
  }
  throw Error(ErrorKind::UnknownScheme, "unknown scheme '" + std::string(name) + "'");
}

double UniformSymbol::coefficient(int k) const {
  if (k < -half_width || k > half_width) return 0.0;
  return coefficients[static_cast<std::size_t>(k + half_width)];
}

Complex UniformSymbol::operator()(Complex phi) const {
  Complex sum = 0.0;
  for (int k = -half_width; k <= half_width; ++k)
    sum += coefficient(k) * std::exp(Complex(0.0, 1.0) * phi * static_cast<double>(k));
  return sum;
}

double UniformSymbol::real_taylor_coefficient(int n) const {
  double moment = 0.0;
  for (int k = -half_width; k <= half_width; ++k) moment += coefficient(k) * std::pow(static_cast<double>(k), 2 * n);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign * moment / std::tgamma(2.0 * n + 1.0);
}

UniformSymbol uniform_symbol(const Scheme& scheme) {
  const std::vector<double> unit(static_cast<std::size_t>(2 * scheme.half_width()), 1.0);
  return UniformSymbol{scheme.half_width(), scheme.coefficients(unit)};
}

int dissipation_order(const UniformSymbol& symbol) {
  constexpr double kThreshold = 1e-9;
  for (int n = 1; n <= 2 * symbol.half_width + 2; ++n)
    if (std::abs(symbol.real_taylor_coefficient(n)) > kThreshold) return 2 * n - 1;
  throw Error(ErrorKind::NoDissipation, "Re lambda vanishes to all tested orders");
}

int dissipation_order(const Scheme& scheme) { return dissipation_order(uniform_symbol(scheme)); }

DissipativityCheck strict_dissipativity_check(const Scheme& scheme, std::size_t grid) {
  if (grid < 64) throw Error(ErrorKind::BadArgs, "dissipativity grid must have at least 64 points");
  const UniformSymbol symbol = uniform_symbol(scheme);
  DissipativityCheck out;
  out.min_real_part = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < grid; ++i) {
    const double phi = kTwoPi * static_cast<double>(i) / static_cast<double>(grid);
    const double re = symbol(phi).real();
    if (re < out.min_real_part) {
      out.min_real_part = re;
      out.worst_phi = phi;
    }
  }
  out.strictly_dissipative = out.min_real_part > 0.0;
  return out;
}

}  // namespace fvspectra
