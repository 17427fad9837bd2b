#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fvspectra/linalg.hpp"

namespace fvspectra {

/// A smooth function of one real variable with complex values. Polynomials
/// and finite exponential sums carry closed forms for derivatives, shifts and
/// cell averages; arbitrary callables fall back to Gauss-Legendre averages.
class SmoothFunction {
 public:
  /// sum_n coeffs[n] (x - center)^n
  struct Polynomial {
    std::vector<double> coeffs;
    double center = 0.0;
  };
  /// sum_l amplitude_l e^{i alpha_l x}
  struct ExpSum {
    std::vector<std::pair<Complex, double>> terms;
  };
  struct Callable {
    std::shared_ptr<const std::function<Complex(double)>> fn;
  };

  static SmoothFunction polynomial(std::vector<double> coeffs, double center = 0.0);
  /// (x - center)^n / scale
  static SmoothFunction monomial(int n, double center = 0.0, double scale = 1.0);
  static SmoothFunction exponential(double alpha, Complex amplitude = 1.0);
  static SmoothFunction sine(int k = 1);
  static SmoothFunction cosine(int k = 1);
  /// exp(cos x)
  static SmoothFunction expcos();
  static SmoothFunction from_callable(std::string name, std::function<Complex(double)> fn);

  const std::string& name() const { return name_; }
  bool has_derivative() const { return !std::holds_alternative<Callable>(rep_); }

  Complex operator()(double x) const;
  /// Throws BadArgs for callables.
  SmoothFunction derivative(int order = 1) const;
  /// (1/(b-a)) * integral_a^b f
  Complex cell_average(double a, double b) const;
  /// x -> f(x - t)
  SmoothFunction shifted(double t) const;

 private:
  using Rep = std::variant<Polynomial, ExpSum, Callable>;
  SmoothFunction(std::string name, Rep rep) : name_(std::move(name)), rep_(std::move(rep)) {}

  std::string name_;
  Rep rep_;
};

/// "sin", "cos", "sin<k>", "cos<k>", "expcos". Throws BadArgs otherwise.
SmoothFunction initial_function(std::string_view id);

}  // namespace fvspectra
