#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "fields.hpp"
#include "gauss.hpp"
#include "quadrature.hpp"

using namespace nonlocal;

namespace {

double weight_sum(const BallQuadratureRule& r) {
  double s = 0.0;
  for (double w : r.weights) s += w;
  return s;
}

double norm(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

}  // namespace

TEST_CASE("build_rule examples") {
  const auto r1 = build_rule(1, 0.5, 1.0, 4, 1);
  CHECK(r1.size() == 8);
  for (const auto& x : r1.nodes) {
    CHECK(std::abs(x[0]) > 0.0);
    CHECK(std::abs(x[0]) < 1.0);
  }
  CHECK(weight_sum(r1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(weight_sum(build_rule(2, 1.0, 0.5, 4, 16)) == doctest::Approx(std::numbers::pi * 0.25).epsilon(1e-12));
  CHECK(weight_sum(build_rule(3, 1.0, 1.0, 6, 8)) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
}

TEST_CASE("rule invariants over many configurations") {
  for (int n = 1; n <= 3; ++n)
    for (double frac : {0.1, 0.3, 0.5, 0.77, 0.95})
      for (int m : {1, 2, 4, 8}) {
        const double p = frac * n;
        const double delta = 0.3 + 0.2 * m;
        const auto rule = build_rule(n, p, delta, m, n == 2 ? 8 : 5);
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(m);
        CHECK(weight_sum(rule) == doctest::Approx(unit_ball_volume(n) * std::pow(delta, n)).epsilon(1e-12));
        for (std::size_t i = 0; i < rule.size(); ++i) {
          const double r = norm(rule.nodes[i]);
          CHECK(r > 0.0);
          CHECK(r < delta);
          CHECK(rule.weights[i] > 0.0);
        }
        for (std::size_t i = 0; i + 1 < rule.size(); i += 2) {
          for (int k = 0; k < 3; ++k) CHECK(rule.nodes[i + 1][k] == -rule.nodes[i][k]);
          CHECK(rule.weights[i + 1] == rule.weights[i]);
        }
      }
}

TEST_CASE("build_rule preconditions") {
  CHECK_THROWS_AS(build_rule(2, 1.0, 1.0, 0, 8), PreconditionError);
  CHECK_THROWS_AS(build_rule(2, 1.0, 1.0, 4, 0), PreconditionError);
  CHECK_THROWS_AS(build_rule(2, 1.0, 1.0, 4, 7), PreconditionError);
  CHECK_THROWS_AS(build_rule(2, 2.0, 1.0, 4, 8), PreconditionError);
  CHECK_THROWS_AS(build_rule(2, 1.0, -1.0, 4, 8), PreconditionError);
}

TEST_CASE("integrate_ball examples") {
  const auto r3 = build_rule(3, 1.0, 0.5, 8, 12);
  CHECK(integrate_ball(r3, [](const Point&) { return 1.0; }) == doctest::Approx(std::numbers::pi / 6).epsilon(1e-12));
  const auto r2 = build_rule(2, 1.0, 0.5, 8, 32);
  CHECK(integrate_ball(r2, [](const Point& x) { return 1.0 / norm(x); }) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  const Kernel k(2, 1.0, 0.5);
  const auto r26 = build_rule(2, 1.0, 0.5, 6, 32);
  const double second = integrate_ball(r26, [&](const Point& x) { return x[0] * k(x) * x[0] / norm(x); });
  CHECK(std::abs(second - 1.0) <= 1e-10);
  CHECK_THROWS_AS(integrate_ball(r2, [](const Point&) { return std::nan(""); }), NumericalError);
}

TEST_CASE("integrate_ball is linear") {
  const auto rule = build_rule(3, 1.2, 0.8, 6, 8);
  auto f = [](const Point& x) { return std::exp(x[0]) + x[1] * x[2]; };
  auto g = [](const Point& x) { return std::cos(x[2]) * x[0]; };
  const double a = 2.5, b = -0.75;
  const double If = integrate_ball(rule, f), Ig = integrate_ball(rule, g);
  const double Ih = integrate_ball(rule, [&](const Point& x) { return a * f(x) + b * g(x); });
  CHECK(std::abs(Ih - a * If - b * Ig) < 1e-13 * (std::abs(a * If) + std::abs(b * Ig)));
}

TEST_CASE("moment_check examples") {
  for (int n = 1; n <= 3; ++n) {
    const Kernel k(n, 0.6 * n, 0.4);
    const auto rule = build_rule(n, 0.6 * n, 0.4, kDefaultRadialOrder, default_angular_order(n));
    for (int j = 1; j <= n; ++j) {
      CHECK(std::abs(moment_check(rule, k, MultiIndex{0, 0, 0}, j)) <= 1e-12);
      MultiIndex ej{0, 0, 0};
      ej[j - 1] = 1;
      CHECK(std::abs(moment_check(rule, k, ej, j) - 1.0) <= 1e-10);
    }
  }
  const Kernel k(2, 1.0, 0.5);
  const auto rule = build_rule(2, 1.0, 0.5, 8, 32);
  CHECK(std::abs(moment_check(rule, k, MultiIndex{1, 0, 0}, 2)) <= 1e-12);
  CHECK_THROWS_AS(moment_check(rule, k, MultiIndex{2, 2, 0}, 1), PreconditionError);
  CHECK_THROWS_AS(moment_check(rule, k, MultiIndex{1, 0, 0}, 3), PreconditionError);
}

TEST_CASE("even moments vanish for any order") {
  for (int n = 1; n <= 3; ++n)
    for (int m : {1, 3, 7}) {
      const Kernel k(n, 0.5 * n, 1.3);
      const auto rule = build_rule(n, 0.5 * n, 1.3, m, n == 2 ? 6 : 3);
      for (const MultiIndex& a : multi_indices(n, 3))
        if (order(a) % 2 == 0)
          for (int j = 1; j <= n; ++j) CHECK(std::abs(moment_check(rule, k, a, j)) <= 1e-12);
    }
}

TEST_CASE("radial rule exactness for omega-weighted polynomials") {
  // int_0^1 rho^(n-1-p) rho^d d rho = 1 / (n - p + d)
  for (int n = 1; n <= 3; ++n)
    for (double frac : {0.2, 0.5, 0.85})
      for (int m : {2, 4, 8}) {
        const double p = frac * n;
        const GaussRule g = singular_radial_rule(n, p, m);
        for (int d = 0; d <= 2 * m - 2; ++d) {
          double s = 0.0;
          for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], d - p);
          CHECK(s == doctest::Approx(1.0 / (n - p + d)).epsilon(1e-12));
        }
        double plain = 0.0;
        for (double w : g.weights) plain += w;
        CHECK(plain == doctest::Approx(1.0 / n).epsilon(1e-12));
      }
}

TEST_CASE("radial accuracy improves with order on an analytic integrand") {
  // int over the 2-ball of |x|^-p exp(-|x|^2) against tanh-sinh.
  const int n = 2;
  const double p = 0.7, delta = 1.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  const double exact =
      2.0 * std::numbers::pi * ts.integrate([&](double r) { return std::pow(r, n - 1 - p) * std::exp(-r * r); }, 0.0, delta);
  double previous = 1.0;
  for (int m : {2, 4, 6, 8}) {
    const auto rule = build_rule(n, p, delta, m, 8);
    const double v = integrate_ball(rule, [&](const Point& x) {
      const double r = norm(x);
      return std::pow(r, -p) * std::exp(-r * r);
    });
    const double err = std::abs(v - exact);
    CHECK(err <= previous);
    previous = std::max(err, 1e-15);
  }
  CHECK(previous < 1e-11);
}

TEST_CASE("Gauss-Legendre integrates polynomials") {
  const GaussRule g = gauss_legendre(5);
  for (int d = 0; d <= 9; ++d) {
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) s += g.weights[i] * std::pow(g.nodes[i], d);
    CHECK(s == doctest::Approx(d % 2 ? 0.0 : 2.0 / (d + 1)).epsilon(1e-14));
  }
}
