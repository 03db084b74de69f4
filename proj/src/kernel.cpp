#include "kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nonlocal {

double unit_ball_volume(int n) {
  check_dimension(n);
  switch (n) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    default: return 4.0 * std::numbers::pi / 3.0;
  }
}

Kernel::Kernel(int n, double p, double delta) : n_(n), p_(p), delta_(delta) {
  check_dimension(n);
  if (!(p > 0.0) || !(p < n)) {
    std::ostringstream msg;
    msg << "kernel exponent p must satisfy 0 < p < n (got p=" << p << ", n=" << n << ")";
    throw PreconditionError(msg.str());
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    std::ostringstream msg;
    msg << "horizon delta must be positive and finite (got " << delta << ")";
    throw PreconditionError(msg.str());
  }
  alpha_n_ = unit_ball_volume(n);
  omega0_ = (n - p + 1.0) / (alpha_n_ * std::pow(delta, n - p + 1.0));
}

double Kernel::operator()(const Point& x) const {
  double r2 = 0.0;
  for (int i = 0; i < n_; ++i) r2 += x[i] * x[i];
  if (r2 == 0.0) throw SingularityError("kernel evaluated at the origin");
  return at_radius(std::sqrt(r2));
}

double Kernel::at_radius(double r) const {
  if (r == 0.0) throw SingularityError("kernel evaluated at the origin");
  if (r >= delta_) return 0.0;
  return omega0_ / std::pow(r, p_);
}

double Kernel::la_norm_exact(double a) const {
  if (!(a >= 1.0)) throw PreconditionError("norm exponent a must be >= 1");
  if (!(a * p_ < n_)) {
    std::ostringstream msg;
    msg << "L^a norm of the kernel diverges for a >= n/p (a=" << a << ", n/p=" << n_ / p_ << ")";
    throw PreconditionError(msg.str());
  }
  const double na = n_ - a * p_;
  const double integral = std::pow(omega0_, a) * n_ * alpha_n_ * std::pow(delta_, na) / na;
  return std::pow(integral, 1.0 / a);
}

double Kernel::second_moment_exact() const {
  return omega0_ * alpha_n_ * std::pow(delta_, n_ - p_ + 1.0) / (n_ - p_ + 1.0);
}

Kernel Kernel::scaled(double factor) const {
  Kernel k = *this;
  k.omega0_ *= factor;
  return k;
}

}  // namespace nonlocal
