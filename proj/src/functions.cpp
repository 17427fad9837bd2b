#include "fvspectra/functions.hpp"

#include <charconv>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "fvspectra/error.hpp"

namespace fvspectra {

namespace {

constexpr Complex kI{0.0, 1.0};

// (e^{iz} - 1) / (iz), without cancellation for small |z|.
Complex phase_average(double z) {
  if (std::abs(z) < 1e-4) return 1.0 + kI * z / 2.0 - z * z / 6.0 - kI * z * z * z / 24.0;
  const double s = std::sin(0.5 * z);
  return Complex(-2.0 * s * s, std::sin(z)) / (kI * z);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

SmoothFunction SmoothFunction::polynomial(std::vector<double> coeffs, double center) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return SmoothFunction("polynomial", Polynomial{std::move(coeffs), center});
}

SmoothFunction SmoothFunction::monomial(int n, double center, double scale) {
  if (n < 0) throw Error(ErrorKind::BadArgs, "monomial degree must be >= 0");
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  coeffs.back() = 1.0 / scale;
  return SmoothFunction("x^" + std::to_string(n), Polynomial{std::move(coeffs), center});
}

SmoothFunction SmoothFunction::exponential(double alpha, Complex amplitude) {
  return SmoothFunction("exp", ExpSum{{{amplitude, alpha}}});
}

SmoothFunction SmoothFunction::sine(int k) {
  const double a = static_cast<double>(k);
  return SmoothFunction(k == 1 ? "sin" : "sin" + std::to_string(k),
                        ExpSum{{{-0.5 * kI, a}, {0.5 * kI, -a}}});
}

SmoothFunction SmoothFunction::cosine(int k) {
  const double a = static_cast<double>(k);
  return SmoothFunction(k == 1 ? "cos" : "cos" + std::to_string(k), ExpSum{{{0.5, a}, {0.5, -a}}});
}

SmoothFunction SmoothFunction::expcos() {
  return from_callable("expcos", [](double x) { return Complex(std::exp(std::cos(x))); });
}

SmoothFunction SmoothFunction::from_callable(std::string name, std::function<Complex(double)> fn) {
  return SmoothFunction(std::move(name), Callable{std::make_shared<const std::function<Complex(double)>>(std::move(fn))});
}

Complex SmoothFunction::operator()(double x) const {
  return std::visit(overloaded{
                        [x](const Polynomial& p) {
                          double acc = 0.0;
                          const double y = x - p.center;
                          for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * y + *it;
                          return Complex(acc);
                        },
                        [x](const ExpSum& e) {
                          Complex acc = 0.0;
                          for (const auto& [amp, alpha] : e.terms) acc += amp * std::exp(kI * (alpha * x));
                          return acc;
                        },
                        [x](const Callable& c) { return (*c.fn)(x); },
                    },
                    rep_);
}

SmoothFunction SmoothFunction::derivative(int order) const {
  if (order < 0) throw Error(ErrorKind::BadArgs, "derivative order must be >= 0");
  if (order == 0) return *this;
  return std::visit(overloaded{
                        [&](const Polynomial& p) {
                          std::vector<double> c = p.coeffs;
                          for (int r = 0; r < order; ++r) {
                            if (c.size() <= 1) {
                              c.assign(1, 0.0);
                              break;
                            }
                            for (std::size_t n = 1; n < c.size(); ++n) c[n - 1] = static_cast<double>(n) * c[n];
                            c.pop_back();
                          }
                          return SmoothFunction(name_ + "'", Polynomial{std::move(c), p.center});
                        },
                        [&](const ExpSum& e) {
                          ExpSum d = e;
                          for (auto& [amp, alpha] : d.terms) amp *= std::pow(kI * alpha, order);
                          return SmoothFunction(name_ + "'", std::move(d));
                        },
                        [&](const Callable&) -> SmoothFunction {
                          throw Error(ErrorKind::BadArgs, "no closed-form derivative for '" + name_ + "'");
                        },
                    },
                    rep_);
}

Complex SmoothFunction::cell_average(double a, double b) const {
  if (!(b > a)) throw Error(ErrorKind::BadArgs, "cell must have positive width");
  return std::visit(
      overloaded{
          [&](const Polynomial& p) {
            // (1/(n+1)) sum_{i<=n} a^i b^(n-i) is the average of y^n over [a, b].
            const double lo = a - p.center;
            const double hi = b - p.center;
            double acc = 0.0;
            for (std::size_t n = 0; n < p.coeffs.size(); ++n) {
              if (p.coeffs[n] == 0.0) continue;
              double sum = 0.0;
              double lo_i = 1.0;
              for (std::size_t i = 0; i <= n; ++i) {
                sum += lo_i * std::pow(hi, static_cast<double>(n - i));
                lo_i *= lo;
              }
              acc += p.coeffs[n] * sum / static_cast<double>(n + 1);
            }
            return Complex(acc);
          },
          [&](const ExpSum& e) {
            Complex acc = 0.0;
            for (const auto& [amp, alpha] : e.terms)
              acc += amp * std::exp(kI * (alpha * a)) * phase_average(alpha * (b - a));
            return acc;
          },
          [&](const Callable& c) {
            using boost::math::quadrature::gauss;
            const auto& fn = *c.fn;
            return gauss<double, 8>::integrate([&fn](double x) { return fn(x); }, a, b) / (b - a);
          },
      },
      rep_);
}

SmoothFunction SmoothFunction::shifted(double t) const {
  return std::visit(overloaded{
                        [&](const Polynomial& p) {
                          return SmoothFunction(name_, Polynomial{p.coeffs, p.center + t});
                        },
                        [&](const ExpSum& e) {
                          ExpSum s = e;
                          for (auto& [amp, alpha] : s.terms) amp *= std::exp(-kI * (alpha * t));
                          return SmoothFunction(name_, std::move(s));
                        },
                        [&](const Callable& c) {
                          auto fn = c.fn;
                          return from_callable(name_, [fn, t](double x) { return (*fn)(x - t); });
                        },
                    },
                    rep_);
}

SmoothFunction initial_function(std::string_view id) {
  if (id == "expcos") return SmoothFunction::expcos();
  for (const std::string_view prefix : {"sin", "cos"}) {
    if (id.substr(0, 3) != prefix) continue;
    int k = 1;
    const auto rest = id.substr(3);
    if (!rest.empty()) {
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
      if (ec != std::errc() || ptr != rest.data() + rest.size() || k < 0) break;
    }
    return prefix == "sin" ? SmoothFunction::sine(k) : SmoothFunction::cosine(k);
  }
  throw Error(ErrorKind::BadArgs, "unknown initial function '" + std::string(id) + "'");
}

}  // namespace fvspectra
