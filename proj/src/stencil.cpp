#include "stencil.hpp"

#include <cmath>

#include "gauss.hpp"
#include "parallel.hpp"

namespace nonlocal {
namespace {

struct CellIntegrator {
  const Kernel& kernel;
  int n;
  int max_depth;
  GaussRule gl = gauss_legendre(6);

  // int omega(y) y/|y| dy over the cube centred at c with half-width hw,
  // clipped to the horizon ball.
  Point integrate(const Point& c, double hw, int depth) const {
    const double delta = kernel.horizon();
    double dmin2 = 0.0, dmax2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double lo = c[k] - hw, hi = c[k] + hw;
      const double near = (lo > 0.0) ? lo : (hi < 0.0 ? -hi : 0.0);
      const double far = std::max(std::abs(lo), std::abs(hi));
      dmin2 += near * near;
      dmax2 += far * far;
    }
    const double dmin = std::sqrt(dmin2), dmax = std::sqrt(dmax2);
    Point zero{};
    if (dmin >= delta) return zero;
    const bool cut = dmax > delta;
    const bool near_origin = dmin < 8.0 * hw;
    if ((cut || near_origin) && depth < max_depth) {
      Point sum{};
      const int children = 1 << n;
      for (int child = 0; child < children; ++child) {
        Point cc = c;
        for (int k = 0; k < n; ++k) cc[k] += ((child >> k) & 1 ? 0.5 : -0.5) * hw;
        const Point part = integrate(cc, 0.5 * hw, depth + 1);
        for (int k = 0; k < n; ++k) sum[k] += part[k];
      }
      return sum;
    }
    Point sum{};
    const int q = static_cast<int>(gl.nodes.size());
    const int total = n == 1 ? q : (n == 2 ? q * q : q * q * q);
    for (int idx = 0; idx < total; ++idx) {
      int rem = idx;
      Point y{};
      double w = 1.0;
      for (int k = 0; k < n; ++k) {
        const int a = rem % q;
        rem /= q;
        y[k] = c[k] + hw * gl.nodes[a];
        w *= hw * gl.weights[a];
      }
      double r2 = 0.0;
      for (int k = 0; k < n; ++k) r2 += y[k] * y[k];
      const double r = std::sqrt(r2);
      if (r >= delta || r == 0.0) continue;
      const double f = w * kernel.at_radius(r) / r;
      for (int k = 0; k < n; ++k) sum[k] += f * y[k];
    }
    return sum;
  }
};

// First nonzero coordinate positive.
bool positive_half(const std::array<int, 3>& o) {
  for (int k = 0; k < 3; ++k) {
    if (o[k] > 0) return true;
    if (o[k] < 0) return false;
  }
  return false;
}

}  // namespace

StencilOperator build_stencil(const Kernel& kernel, OperatorKind kind, double h) {
  const int n = kernel.dimension();
  const double delta = kernel.horizon();
  require(h > 0.0, "grid spacing must be positive");
  require(h <= delta / 4.0 + 1e-15 * delta, "grid spacing too coarse: need h <= delta/4 for the stencil");
  require(kind != OperatorKind::curl || n == 3, "nonlocal curl is defined for n = 3 only");

  StencilOperator op;
  op.kind = kind;
  op.dimension = n;
  op.spacing = h;
  op.horizon = delta;

  const double cutoff = delta + h * std::sqrt(double(n));
  const int reach = static_cast<int>(std::ceil(cutoff / h));
  const CellIntegrator integrator{kernel, n, n == 1 ? 40 : (n == 2 ? 8 : 3)};

  // The centre cell is symmetric about the singularity, so its integral of
  // the odd function omega e vanishes; it is left out of the stencil.
  std::vector<std::array<int, 3>> half;
  std::vector<Point> half_weights;
  std::array<int, 3> o{0, 0, 0};
  const int r1 = n >= 2 ? reach : 0;
  const int r2 = n >= 3 ? reach : 0;
  for (o[0] = -reach; o[0] <= reach; ++o[0])
    for (o[1] = -r1; o[1] <= r1; ++o[1])
      for (o[2] = -r2; o[2] <= r2; ++o[2]) {
        if (!positive_half(o)) continue;
        double dist2 = 0.0;
        Point c{};
        for (int k = 0; k < n; ++k) {
          c[k] = o[k] * h;
          dist2 += c[k] * c[k];
        }
        if (std::sqrt(dist2) >= cutoff) continue;
        const Point w = integrator.integrate(c, 0.5 * h, 0);
        bool nonzero = false;
        for (int k = 0; k < n; ++k) nonzero = nonzero || w[k] != 0.0;
        if (!nonzero) continue;
        half.push_back(o);
        half_weights.push_back(w);
      }

  double moment = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) moment += 2.0 * half[i][0] * h * half_weights[i][0];
  require(moment > 0.0, "stencil has no support; horizon too small for the grid");
  op.raw_moment = moment;

  for (std::size_t i = 0; i < half.size(); ++i) {
    Point w = half_weights[i];
    Point neg{};
    for (int k = 0; k < n; ++k) {
      w[k] /= moment;
      neg[k] = -w[k];
    }
    std::array<int, 3> mirrored{-half[i][0], -half[i][1], -half[i][2]};
    op.offsets.push_back(half[i]);
    op.weights.push_back(w);
    op.offsets.push_back(mirrored);
    op.weights.push_back(neg);
    for (int k = 0; k < n; ++k) op.reach = std::max(op.reach, std::abs(half[i][k]));
  }
  return op;
}

GridFunction apply_stencil(const StencilOperator& op, const GridFunction& g, int threads) {
  const int n = op.dimension;
  require(g.dimension == n, "grid dimension does not match the stencil");
  require(std::abs(g.spacing - op.spacing) <= 1e-12 * op.spacing, "grid spacing does not match the stencil");
  const int in_components = operator_input_components(op.kind, n);
  require(g.components == in_components, "grid has the wrong number of components for " + to_string(op.kind));

  GridFunction out = g;
  out.components = operator_output_components(op.kind, n);
  out.values.assign(out.point_count() * out.components, 0.0);
  for (int k = 0; k < n; ++k) {
    out.valid_begin[k] = g.valid_begin[k] + op.reach;
    out.valid_end[k] = g.valid_end[k] - op.reach;
    require(out.valid_end[k] > out.valid_begin[k],
            "insufficient padding: the grid needs at least " + std::to_string(op.reach) +
                " valid cells beyond the evaluation region on every side");
  }

  const int mc = out.components;
  for_each_block(out.point_count(), 1024, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (!out.valid(i)) continue;
      const auto idx = g.index(i);
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t s = 0; s < op.offsets.size(); ++s) {
        std::array<int, 3> j = idx;
        for (int k = 0; k < n; ++k) j[k] += op.offsets[s][k];
        const double* u = &g.values[g.flat(j) * in_components];
        const Point& w = op.weights[s];
        switch (op.kind) {
          case OperatorKind::divergence:
            for (int k = 0; k < n; ++k) acc[0] += w[k] * u[k];
            break;
          case OperatorKind::gradient:
            for (int k = 0; k < n; ++k) acc[k] += w[k] * u[0];
            break;
          case OperatorKind::curl:
            acc[0] += w[1] * u[2] - w[2] * u[1];
            acc[1] += w[2] * u[0] - w[0] * u[2];
            acc[2] += w[0] * u[1] - w[1] * u[0];
            break;
        }
      }
      for (int k = 0; k < mc; ++k) {
        if (!std::isfinite(acc[k])) throw NumericalError("non-finite value in stencil application");
        out.values[i * mc + k] = acc[k];
      }
    }
  });
  return out;
}

}  // namespace nonlocal
