#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "fields.hpp"

using namespace nonlocal;

namespace {

FieldPtr linear_2d() {
  FieldSpec s;
  s.name = "linear";
  s.dimension = 2;
  s.vector = true;
  s.A = {2, 0, 0, 3};
  return make_field(s);
}

std::vector<FieldPtr> all_builtin_smooth() {
  std::vector<FieldPtr> out;
  for (int n = 1; n <= 3; ++n)
    for (bool vec : {false, true}) {
      for (const char* name : {"constant", "linear", "quadratic", "gaussian", "bump", "trig-bump"})
        out.push_back(builtin_field(name, n, vec));
    }
  out.push_back(builtin_field("swirl", 3, true));
  FieldSpec small_bump;
  small_bump.name = "bump";
  small_bump.dimension = 2;
  small_bump.vector = true;
  small_bump.radius = 1.5;
  out.push_back(make_field(small_bump));
  return out;
}

}  // namespace

TEST_CASE("multi-index enumeration") {
  CHECK(multi_indices(1, 3).size() == 4);
  CHECK(multi_indices(2, 3).size() == 10);
  CHECK(multi_indices(3, 3).size() == 20);
  CHECK(multi_indices(3, 0).size() == 1);
  CHECK(order(multi_indices(3, 3).front()) == 0);
}

TEST_CASE("builtin field examples") {
  FieldSpec c;
  c.name = "constant";
  c.dimension = 2;
  c.c = 3.0;
  const FieldPtr f = make_field(c);
  double v = 0.0;
  f->eval(Point{0.3, -0.2, 0}, std::span<double>(&v, 1));
  CHECK(v == 3.0);
  for (const auto& a : multi_indices(2, 3)) {
    if (order(a) == 0) continue;
    f->partial(a, Point{0.1, 0.2, 0}, std::span<double>(&v, 1));
    CHECK(v == 0.0);
  }

  const FieldPtr lin = linear_2d();
  double u[2];
  lin->eval(Point{0.5, -1.0, 0}, u);
  CHECK(u[0] == doctest::Approx(1.0));
  CHECK(u[1] == doctest::Approx(-3.0));
  lin->partial(MultiIndex{1, 0, 0}, Point{0.5, -1.0, 0}, u);
  CHECK(u[0] == 2.0);
  for (const auto& a : multi_indices(2, 3))
    if (order(a) == 2) {
      lin->partial(a, Point{0.5, -1.0, 0}, u);
      CHECK(u[0] == 0.0);
      CHECK(u[1] == 0.0);
    }

  const FieldPtr g = builtin_field("gaussian", 1);
  g->eval(Point{0.5, 0, 0}, std::span<double>(&v, 1));
  CHECK(v == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
  g->partial(MultiIndex{1, 0, 0}, Point{0.5, 0, 0}, std::span<double>(&v, 1));
  CHECK(v == doctest::Approx(-std::exp(-0.25)).epsilon(1e-15));

  CHECK_THROWS_AS(builtin_field("nope", 2), PreconditionError);
  CHECK_THROWS_AS(builtin_field("swirl", 2, true), PreconditionError);
  CHECK_THROWS_AS(builtin_field("gaussian", 4), PreconditionError);
}

TEST_CASE("local operators") {
  const FieldPtr lin = linear_2d();
  CHECK(local_divergence(*lin, Point{0.7, -0.4, 0}) == doctest::Approx(5.0));
  CHECK(local_gradient(*builtin_field("gaussian", 1), Point{}).at(0) == 0.0);

  FieldSpec rot;
  rot.name = "linear";
  rot.dimension = 3;
  rot.vector = true;
  rot.A = {0, -1, 0, 1, 0, 0, 0, 0, 0};
  const auto curl = local_curl(*make_field(rot), Point{0.3, 2.0, -1.0});
  CHECK(curl[0] == 0.0);
  CHECK(curl[1] == 0.0);
  CHECK(curl[2] == 2.0);
  CHECK_THROWS_AS(local_curl(*lin, Point{}), PreconditionError);
  CHECK_THROWS_AS(local_divergence(*builtin_field("gaussian", 2), Point{}), PreconditionError);
}

TEST_CASE("partials agree with Richardson differences of the next lower order") {
  std::mt19937_64 rng(20261019);
  for (const FieldPtr& f : all_builtin_smooth()) {
    const int n = f->dimension(), m = f->components();
    CAPTURE(f->name());
    CAPTURE(n);
    CAPTURE(m);
    std::vector<double> buf(m), got(m);
    for (int trial = 0; trial < 100; ++trial) {
      const Point x = oracle::random_point(rng, f->support_box());
      for (const MultiIndex& a : multi_indices(n, 3)) {
        if (order(a) == 0) {
          f->eval(x, buf);
          f->partial(a, x, got);
          for (int i = 0; i < m; ++i) CHECK(got[i] == buf[i]);
          continue;
        }
        int k = 0;
        while (a[k] == 0) ++k;
        MultiIndex lower = a;
        --lower[k];
        f->partial(a, x, got);
        for (int i = 0; i < m; ++i) {
          auto g = [&](const Point& y) {
            std::vector<double> t(m);
            f->partial(lower, y, t);
            return t[i];
          };
          const double fd = oracle::richardson(g, x, k, 1e-4);
          CHECK(std::abs(got[i] - fd) <= 1e-6 * std::max(std::abs(fd), 1e-3));
        }
      }
    }
  }
}

TEST_CASE("mixed partials are symmetric") {
  std::mt19937_64 rng(7);
  const FieldPtr f = builtin_field("trig-bump", 3, true);
  for (int trial = 0; trial < 20; ++trial) {
    const Point x = oracle::random_point(rng, f->support_box());
    // d1 d2 u by differencing d2 u along x1 and d1 u along x2
    auto d = [&](MultiIndex a, int i) {
      return [=](const Point& y) {
        double t[3];
        f->partial(a, y, t);
        return t[i];
      };
    };
    for (int i = 0; i < 3; ++i) {
      const double via1 = oracle::richardson(d(MultiIndex{0, 1, 0}, i), x, 0, 1e-4);
      const double via2 = oracle::richardson(d(MultiIndex{1, 0, 0}, i), x, 1, 1e-4);
      CHECK(std::abs(via1 - via2) <= 1e-8 * std::max(1.0, std::abs(via1)));
    }
  }
}

TEST_CASE("Sobolev norm examples") {
  FieldSpec c;
  c.name = "constant";
  c.dimension = 2;
  c.c = 3.0;
  c.box = Box{2, {0, 0, 0}, {1, 1, 0}};
  CHECK(sobolev_norm(*make_field(c), kInfinity) == doctest::Approx(3.0).epsilon(1e-15));

  const double exact = std::sqrt(oracle::gaussian_w32_squared_1d());
  CHECK(sobolev_norm(*builtin_field("gaussian", 1), 2.0) == doctest::Approx(exact).epsilon(1e-8));

  FieldPtr lin = linear_2d();
  CHECK(sobolev_norm(*lin, kInfinity) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(sobolev_norm(*lin, 0.5), PreconditionError);
}

TEST_CASE("Sobolev norm monotone in order and homogeneous") {
  for (int n = 1; n <= 2; ++n)
    for (double q : {1.0, 2.0, kInfinity}) {
      const FieldPtr f = builtin_field("gaussian", n, n == 2);
      SobolevOptions o0, o1, o3;
      o0.order = 0;
      o1.order = 1;
      o3.order = 3;
      const double w0 = sobolev_norm(*f, q, o0), w1 = sobolev_norm(*f, q, o1), w3 = sobolev_norm(*f, q, o3);
      CHECK(w0 <= w1);
      CHECK(w1 <= w3);

      const Box& box = f->support_box();
      auto base = std::make_shared<RadialProfileField>("g", n, Profile::gaussian, std::vector<Point>{Point{}}, 1.0, 1.0, box);
      auto scaled =
          std::make_shared<RadialProfileField>("g", n, Profile::gaussian, std::vector<Point>{Point{}}, 1.0, -2.5, box);
      CHECK(sobolev_norm(*scaled, q) == doctest::Approx(2.5 * sobolev_norm(*base, q)).epsilon(1e-13));
    }
}

TEST_CASE("bump Sobolev norm ignores box enlargement") {
  const double R = 2.0;
  const int points = 801;
  Box box{1, {-(R + 0.5), 0, 0}, {R + 0.5, 0, 0}};
  const double h = (box.upper[0] - box.lower[0]) / (points - 1);
  Box wide = box;
  wide.lower[0] -= 100 * h;
  wide.upper[0] += 100 * h;
  auto tight = std::make_shared<RadialProfileField>("b", 1, Profile::bump, std::vector<Point>{Point{}}, R, 1.0, box);
  auto loose = std::make_shared<RadialProfileField>("b", 1, Profile::bump, std::vector<Point>{Point{}}, R, 1.0, wide);
  for (double q : {1.0, 2.0, kInfinity}) {
    SobolevOptions a, b;
    a.points_per_axis = points;
    b.points_per_axis = points + 200;
    const double na = sobolev_norm(*tight, q, a), nb = sobolev_norm(*loose, q, b);
    CHECK(std::abs(na - nb) <= 1e-13 * na);
  }
}

TEST_CASE("Sobolev norm is independent of the thread count") {
  const FieldPtr f = builtin_field("bump", 2, true);
  SobolevOptions one, four;
  one.points_per_axis = four.points_per_axis = 101;
  four.threads = 4;
  CHECK(sobolev_norm(*f, 2.0, one) == sobolev_norm(*f, 2.0, four));
}
