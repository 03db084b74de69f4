#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "kernel.hpp"

namespace nonlocal {

/// Product quadrature over the origin-centred ball of radius delta.
///
/// Weights are plain Lebesgue weights; the kernel is not folded in, so the
/// same rule serves moment checks, norm checks and operator evaluation.
/// Nodes are stored as antipodal pairs (node 2k+1 == -node 2k) and none lies
/// at the origin.
struct BallQuadratureRule {
  int dimension = 1;
  double exponent = 0.0;
  double horizon = 0.0;
  int radial_order = 0;
  int angular_order = 0;
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Default angular order: 1 for n=1, 32 for n=2, 12 for n=3.
int default_angular_order(int n);
inline constexpr int kDefaultRadialOrder = 8;

/// Builds the rule for an |x|^(-p) singular integrand on the delta-ball.
///
/// Radial part: singular_radial_rule (exact for rho^(-p) * poly of degree
/// <= 2m-2 and for the plain measure). Angular part: n=1 the pair {-1,+1};
/// n=2 `s` equispaced angles (s even); n=3 Gauss-Legendre of order s in
/// cos(theta) times 2s equispaced azimuths.
BallQuadratureRule build_rule(int n, double p, double delta, int radial_order, int angular_order);

/// Sum of weights_i * f(nodes_i). Throws NumericalError on a non-finite f.
template <class F>
double integrate_ball(const BallQuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) throw NumericalError("integrand is not finite at a quadrature node");
    sum += rule.weights[i] * v;
  }
  return sum;
}

/// Numeric int x^alpha omega(x) e_j dx over the ball (j is 1-based).
double moment_check(const BallQuadratureRule& rule, const Kernel& kernel, const MultiIndex& alpha, int j);

/// Numeric L^a norm of the kernel, using a rule built for exponent a*p.
double kernel_la_norm_numeric(const Kernel& kernel, double a, int radial_order = kDefaultRadialOrder);

}  // namespace nonlocal
