#include "maximal.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace nonlocal {

std::vector<double> geometric_radii(double r_max, int count, double ratio) {
  require(r_max > 0.0, "largest radius must be positive");
  require(count >= 1, "radii ladder needs at least one radius");
  require(ratio > 1.0, "radii ladder ratio must exceed 1");
  std::vector<double> radii(count);
  for (int k = 0; k < count; ++k) radii[count - 1 - k] = r_max / std::pow(ratio, k);
  return radii;
}

std::vector<double> dense_radii(double r_max, int count) {
  require(r_max > 0.0 && count >= 1, "dense radii need r_max > 0 and count >= 1");
  std::vector<double> radii(count);
  for (int k = 0; k < count; ++k) radii[k] = r_max * (k + 1) / count;
  return radii;
}

namespace {

// Half-widths along the last used axis of the discrete ball, one per offset
// in the leading axes (axis 0, then axis 1 for n = 3).
struct BallRows {
  std::vector<std::array<int, 2>> lead;
  std::vector<int> half;
  double count = 0.0;
};

BallRows ball_rows(int n, double radius_cells) {
  // Tiny slack so radii that are exact multiples of h include the boundary point.
  const double r2 = radius_cells * radius_cells * (1.0 + 1e-12);
  const int k = static_cast<int>(std::floor(radius_cells * (1.0 + 1e-12)));
  BallRows rows;
  auto add = [&](int d0, int d1) {
    const double rest = r2 - double(d0) * d0 - double(d1) * d1;
    if (rest < 0.0) return;
    const int w = static_cast<int>(std::floor(std::sqrt(rest)));
    rows.lead.push_back({d0, d1});
    rows.half.push_back(w);
    rows.count += 2.0 * w + 1.0;
  };
  if (n == 1) {
    add(0, 0);
  } else if (n == 2) {
    for (int d = -k; d <= k; ++d) add(d, 0);
  } else {
    for (int d0 = -k; d0 <= k; ++d0)
      for (int d1 = -k; d1 <= k; ++d1) add(d0, d1);
  }
  return rows;
}

}  // namespace

GridFunction maximal_function(const GridFunction& g, const std::vector<double>& radii, int threads) {
  require(!radii.empty(), "maximal function needs at least one radius");
  const int n = g.dimension;
  double shortest = kInfinity;
  for (int k = 0; k < n; ++k) shortest = std::min(shortest, g.spacing * (g.shape[k] - 1));
  for (double r : radii) {
    require(r > 0.0, "maximal function radii must be positive");
    require(r <= 0.5 * shortest * (1.0 + 1e-12), "maximal function radii must not exceed half the box width");
  }

  // Inclusive prefix sums of |g| along the last used axis.
  const int row_axis = n - 1;
  const int len = g.shape[row_axis];
  std::vector<double> prefix(g.point_count(), 0.0);
  for (std::size_t f = 0; f < g.point_count(); ++f) {
    const auto idx = g.index(f);
    double mag2 = 0.0;
    for (int i = 0; i < g.components; ++i) mag2 += g.values[f * g.components + i] * g.values[f * g.components + i];
    double before = 0.0;
    if (idx[row_axis] > 0) {
      auto prev = idx;
      --prev[row_axis];
      before = prefix[g.flat(prev)];
    }
    prefix[f] = before + std::sqrt(mag2);
  }

  std::vector<BallRows> balls;
  for (double r : radii) balls.push_back(ball_rows(n, r / g.spacing));

  GridFunction out = g;
  out.components = 1;
  out.values.assign(g.point_count(), 0.0);
  constexpr std::size_t kBlock = 256;
  for_each_block(g.point_count(), kBlock, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const auto idx = g.index(f);
      double best = 0.0;
      for (const auto& ball : balls) {
        double sum = 0.0;
        for (std::size_t j = 0; j < ball.lead.size(); ++j) {
          auto at = idx;
          bool inside = true;
          for (int k = 0; k < row_axis; ++k) {
            at[k] += ball.lead[j][k];
            inside = inside && at[k] >= 0 && at[k] < g.shape[k];
          }
          if (!inside) continue;
          const int lo = std::max(0, idx[row_axis] - ball.half[j]);
          const int hi = std::min(len - 1, idx[row_axis] + ball.half[j]);
          if (lo > hi) continue;
          at[row_axis] = hi;
          sum += prefix[g.flat(at)];
          if (lo > 0) {
            at[row_axis] = lo - 1;
            sum -= prefix[g.flat(at)];
          }
        }
        best = std::max(best, sum / ball.count);
      }
      out.values[f] = best;
    }
  });
  return out;
}

namespace {

double grid_lb_norm(const GridFunction& g, double b) {
  double acc = 0.0;
  for (std::size_t f = 0; f < g.point_count(); ++f) {
    double mag2 = 0.0;
    for (int i = 0; i < g.components; ++i) mag2 += g.values[f * g.components + i] * g.values[f * g.components + i];
    acc += std::pow(std::sqrt(mag2), b);
  }
  return std::pow(acc * g.cell_volume(), 1.0 / b);
}

}  // namespace

MaximalReport maximal_bound_check(const AnalyticField& f, double b, const Box& box, int resolution,
                                  std::vector<double> radii, int threads) {
  require(b > 1.0, "maximal bound check needs b > 1");
  const GridFunction g = sample_to_grid(f, box, resolution, threads);
  double shortest = kInfinity;
  for (int k = 0; k < g.dimension; ++k) shortest = std::min(shortest, g.spacing * (g.shape[k] - 1));
  if (radii.empty()) radii = geometric_radii(0.5 * shortest);
  std::sort(radii.begin(), radii.end());

  const GridFunction mf = maximal_function(g, radii, threads);
  const GridFunction smallest = maximal_function(g, {radii.front()}, threads);
  for (std::size_t i = 0; i < mf.values.size(); ++i) {
    if (!std::isfinite(mf.values[i])) throw NumericalError("maximal function is not finite");
    if (mf.values[i] < smallest.values[i] * (1.0 - 1e-14))
      throw NumericalError("maximal function below the smallest-ball average");
  }

  MaximalReport report;
  report.b = b;
  report.f_norm = grid_lb_norm(g, b);
  report.mf_norm = grid_lb_norm(mf, b);
  if (!std::isfinite(report.f_norm) || !std::isfinite(report.mf_norm))
    throw NumericalError("L^b norm is not finite in maximal bound check");
  if (report.f_norm > 0.0) report.ratio = report.mf_norm / report.f_norm;
  report.box = g.box();
  report.resolution = resolution;
  report.spacing = g.spacing;
  report.radii = std::move(radii);
  return report;
}

}  // namespace nonlocal
