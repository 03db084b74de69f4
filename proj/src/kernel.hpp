#pragma once

#include "common.hpp"

namespace nonlocal {

/// Volume of the unit ball in R^n, tabulated exactly for n <= 3.
double unit_ball_volume(int n);

/// Radial power-law influence function
///
///   omega(x) = omega0 / |x|^p   for 0 < |x| < delta,   0 otherwise,
///
/// with omega0 fixed so that the second moment of omega * e_j equals one.
/// Immutable after construction.
class Kernel {
 public:
  /// Throws PreconditionError unless n in {1,2,3}, 0 < p < n and delta > 0.
  Kernel(int n, double p, double delta);

  int dimension() const { return n_; }
  double exponent() const { return p_; }
  double horizon() const { return delta_; }
  double omega0() const { return omega0_; }
  double unit_ball() const { return alpha_n_; }

  /// Weight at a point. Throws SingularityError at the origin.
  double operator()(const Point& x) const;

  /// Weight as a function of |x|.
  double at_radius(double r) const;

  /// Closed-form L^a norm of omega over the horizon ball; requires 1 <= a < n/p.
  double la_norm_exact(double a) const;

  /// Closed-form value of int x_j omega(x) e_j dx over the horizon ball.
  double second_moment_exact() const;

  /// Copy of this kernel with omega0 multiplied by `factor`; no longer normalized.
  Kernel scaled(double factor) const;

 private:
  int n_;
  double p_;
  double delta_;
  double alpha_n_;
  double omega0_;
};

}  // namespace nonlocal
