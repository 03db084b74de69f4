#include "quadrature.hpp"

#include <numbers>
#include <sstream>

#include "gauss.hpp"

namespace nonlocal {
namespace {

struct Direction {
  Point u;
  double weight;
};

// Half of an antipodally symmetric direction set on the unit sphere; the
// other half is the negation of each entry.
std::vector<Direction> half_directions(int n, int s) {
  std::vector<Direction> dirs;
  if (n == 1) {
    dirs.push_back({{1.0, 0.0, 0.0}, 1.0});
  } else if (n == 2) {
    require(s >= 2 && s % 2 == 0, "angular order for n=2 must be even and >= 2 (got " + std::to_string(s) + ")");
    const double w = 2.0 * std::numbers::pi / s;
    for (int k = 0; k < s / 2; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / s;
      dirs.push_back({{std::cos(theta), std::sin(theta), 0.0}, w});
    }
  } else {
    require(s >= 1, "angular order must be >= 1");
    const GaussRule mu = gauss_legendre(s);
    const int azimuths = 2 * s;
    const double dphi = 2.0 * std::numbers::pi / azimuths;
    for (int i = 0; i < s; ++i) {
      const double c = mu.nodes[i];
      if (c < 0.0) continue;
      const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
      // The equator (odd s) only contributes half of its azimuths.
      const int count = (c == 0.0) ? s : azimuths;
      for (int k = 0; k < count; ++k) {
        const double phi = k * dphi;
        dirs.push_back({{sn * std::cos(phi), sn * std::sin(phi), c}, mu.weights[i] * dphi});
      }
    }
  }
  return dirs;
}

}  // namespace

int default_angular_order(int n) {
  check_dimension(n);
  return n == 1 ? 1 : (n == 2 ? 32 : 12);
}

BallQuadratureRule build_rule(int n, double p, double delta, int radial_order, int angular_order) {
  check_dimension(n);
  require(radial_order >= 1, "radial order m must be >= 1");
  require(angular_order >= 1, "angular order s must be >= 1");
  require(p > 0.0 && p < n, "rule exponent must satisfy 0 < p < n");
  require(delta > 0.0 && std::isfinite(delta), "horizon delta must be positive");

  const GaussRule radial = singular_radial_rule(n, p, radial_order);
  const std::vector<Direction> dirs = half_directions(n, angular_order);
  const double scale = std::pow(delta, n);

  BallQuadratureRule rule;
  rule.dimension = n;
  rule.exponent = p;
  rule.horizon = delta;
  rule.radial_order = radial_order;
  rule.angular_order = angular_order;
  rule.nodes.reserve(2 * radial.nodes.size() * dirs.size());
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = delta * radial.nodes[i];
    if (!(r > 0.0 && r < delta)) throw NumericalError("radial rule produced a node outside (0, delta)");
    for (const Direction& d : dirs) {
      Point x{};
      for (int k = 0; k < n; ++k) x[k] = r * d.u[k];
      const double w = scale * radial.weights[i] * d.weight;
      Point y{};
      for (int k = 0; k < n; ++k) y[k] = -x[k];
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
      rule.nodes.push_back(y);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

double moment_check(const BallQuadratureRule& rule, const Kernel& kernel, const MultiIndex& alpha, int j) {
  const int n = rule.dimension;
  require(kernel.dimension() == n, "kernel and rule dimensions differ");
  require(j >= 1 && j <= n, "component j must lie in 1..n");
  require(order(alpha) <= 3 && alpha[0] >= 0 && alpha[1] >= 0 && alpha[2] >= 0, "moment multi-index must satisfy |alpha| <= 3");
  for (int k = n; k < kMaxDimension; ++k) require(alpha[k] == 0, "multi-index has entries beyond the dimension");

  // Antipodal pairs are summed first so odd integrands cancel exactly.
  auto value = [&](const Point& x) {
    double r2 = 0.0;
    for (int k = 0; k < n; ++k) r2 += x[k] * x[k];
    const double r = std::sqrt(r2);
    double mono = 1.0;
    for (int k = 0; k < n; ++k) mono *= std::pow(x[k], alpha[k]);
    return mono * kernel.at_radius(r) * x[j - 1] / r;
  };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < rule.size(); i += 2) {
    sum += rule.weights[i] * value(rule.nodes[i]) + rule.weights[i + 1] * value(rule.nodes[i + 1]);
  }
  return sum;
}

double kernel_la_norm_numeric(const Kernel& kernel, double a, int radial_order) {
  const int n = kernel.dimension();
  const double p = kernel.exponent();
  require(a >= 1.0, "norm exponent a must be >= 1");
  if (!(a * p < n)) {
    std::ostringstream msg;
    msg << "L^a norm of the kernel diverges for a >= n/p (a=" << a << ")";
    throw PreconditionError(msg.str());
  }
  const BallQuadratureRule rule = build_rule(n, a * p, kernel.horizon(), radial_order, default_angular_order(n));
  const double integral = integrate_ball(rule, [&](const Point& x) { return std::pow(kernel(x), a); });
  return std::pow(integral, 1.0 / a);
}

}  // namespace nonlocal
