#include "fvspectra/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fvspectra/error.hpp"

namespace fvspectra {

namespace {

constexpr double kPeriodTol = 1e-12;
constexpr double kSumTol = 1e-12;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::size_t detect_period(std::span<const double> steps, double h_av) {
  const std::size_t n = steps.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i)
      periodic = std::abs(steps[i] - steps[i % d]) <= kPeriodTol * h_av;
    if (periodic) return d;
  }
  return n;
}

}  // namespace

double MeshStructure::magnitude() const {
  double out = 0.0;
  for (double g : gamma) out = std::max(out, std::abs(g));
  return out;
}

MeshStructure MeshStructure::alternating(double xi) { return MeshStructure{{xi, -xi}}; }

PeriodicMesh::PeriodicMesh(std::vector<double> steps, double offset, bool rescaled)
    : steps_(std::move(steps)), offset_(offset), rescaled_(rescaled) {
  nodes_.resize(steps_.size());
  double x = offset_;
  for (std::size_t j = 0; j < steps_.size(); ++j) {
    nodes_[j] = x;
    x += steps_[j];
  }
  period_ = detect_period(steps_, h_av());
}

PeriodicMesh PeriodicMesh::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::ZeroSize, "a mesh needs at least one node");
  return PeriodicMesh(std::vector<double>(n, kTwoPi / static_cast<double>(n)), 0.0, false);
}

PeriodicMesh PeriodicMesh::alternating(std::size_t n, double xi) {
  if (n == 0) throw Error(ErrorKind::ZeroSize, "a mesh needs at least one node");
  if (n % 2 != 0) throw Error(ErrorKind::OddN, "alternating meshes need an even node count");
  if (!(xi >= 0.0 && xi < 1.0)) throw Error(ErrorKind::XiOutOfRange, "xi must lie in [0, 1)");
  const double h = kTwoPi / static_cast<double>(n);
  std::vector<double> steps(n);
  for (std::size_t j = 0; j < n; ++j) steps[j] = (j % 2 == 0 ? 1.0 + xi : 1.0 - xi) * h;
  return PeriodicMesh(std::move(steps), 0.0, false);
}

PeriodicMesh PeriodicMesh::from_steps(std::vector<double> steps, double offset) {
  if (steps.empty()) throw Error(ErrorKind::EmptyInput, "no steps given");
  for (double h : steps)
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::NonPositiveStep, "steps must be positive and finite");
  const double total = std::accumulate(steps.begin(), steps.end(), 0.0);
  bool rescaled = false;
  if (std::abs(total - kTwoPi) > kSumTol * kTwoPi) {
    const double factor = kTwoPi / total;
    for (double& h : steps) h *= factor;
    rescaled = true;
  }
  return PeriodicMesh(std::move(steps), offset, rescaled);
}

PeriodicMesh PeriodicMesh::from_structure(const MeshStructure& structure, std::size_t repeats) {
  if (structure.gamma.empty() || repeats == 0) throw Error(ErrorKind::EmptyInput, "empty structure");
  std::vector<double> steps;
  steps.reserve(structure.period() * repeats);
  for (std::size_t r = 0; r < repeats; ++r)
    for (double g : structure.gamma) steps.push_back(1.0 + g);
  return from_steps(std::move(steps));
}

double PeriodicMesh::h_min() const { return *std::min_element(steps_.begin(), steps_.end()); }
double PeriodicMesh::h_max() const { return *std::max_element(steps_.begin(), steps_.end()); }

double PeriodicMesh::step(long j) const {
  const long n = static_cast<long>(steps_.size());
  return steps_[static_cast<std::size_t>(j - floor_div(j, n) * n)];
}

double PeriodicMesh::node(long j) const {
  const long n = static_cast<long>(steps_.size());
  const long wraps = floor_div(j, n);
  return nodes_[static_cast<std::size_t>(j - wraps * n)] + static_cast<double>(wraps) * kTwoPi;
}

MeshStructure PeriodicMesh::structure() const {
  MeshStructure out;
  out.gamma.resize(period_);
  const double h = h_av();
  for (std::size_t j = 0; j < period_; ++j) out.gamma[j] = steps_[j] / h - 1.0;
  return out;
}

double norm_av(std::span<const Complex> f) {
  if (f.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& v : f) sum += std::norm(v);
  return std::sqrt(sum / static_cast<double>(f.size()));
}

double weighted_error_norm(std::span<const Complex> u, std::span<const Complex> reference,
                           const PeriodicMesh& mesh, ErrorWeights weights) {
  if (u.size() != mesh.size() || reference.size() != mesh.size())
    throw Error(ErrorKind::MeshMismatch, "mesh functions do not match the mesh size");
  double sum = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const long jl = static_cast<long>(j);
    const double w = weights == ErrorWeights::Cell ? mesh.step(jl) : 0.5 * (mesh.step(jl) + mesh.step(jl - 1));
    sum += w * std::norm(u[j] - reference[j]);
  }
  return std::sqrt(sum / kTwoPi);
}

}  // namespace fvspectra
