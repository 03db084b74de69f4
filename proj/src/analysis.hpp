#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fields.hpp"
#include "grid.hpp"
#include "operators.hpp"

namespace nonlocal {

/// Errors below this are treated as exact and left out of rate fits.
inline constexpr double kExactThreshold = 1e-12;

/// L^q distance of two grid functions over their common valid region; vector
/// values use the Euclidean magnitude per point. q = inf gives the maximum.
double lq_error(const GridFunction& a, const GridFunction& b, double q);

/// Explicit constant c0 = n (n - p + 1) alpha_n / (12 (n - p)).
double c0_constant(int n, double p);

/// Least-squares line through (log delta, log error).
struct RateFit {
  double order = 0.0;
  double log_constant = 0.0;  ///< natural log of C in error ~ C delta^order
};

/// Rows with error < kExactThreshold are skipped; throws PreconditionError
/// with fewer than two usable rows.
RateFit rate_fit(const std::vector<std::pair<double, double>>& rows);

struct ConvergenceRow {
  double delta = 0.0;
  double q = 0.0;
  double error = 0.0;
  double sobolev_norm = 0.0;
  double bound = 0.0;  ///< c0 delta^2 ||u||_{W^{3,q}}
  double ratio = 0.0;  ///< error / bound
};

struct ConvergenceReport {
  std::string field;
  OperatorKind kind = OperatorKind::divergence;
  int n = 1;
  double p = 0.0;
  double q = 0.0;
  double c0 = 0.0;
  std::vector<ConvergenceRow> rows;
  /// Empty when every row is below kExactThreshold ("exact").
  std::optional<RateFit> fit;
  std::string convention = kSobolevConvention;
  int radial_order = 0;
  int angular_order = 0;
  Box box;
  double spacing = 0.0;
  std::array<int, kMaxDimension> resolution{1, 1, 1};
  /// Relative change of the smallest-delta error when the grid spacing is halved.
  std::optional<double> refinement_change;

  bool bound_holds() const;
  double max_ratio() const;
};

struct SweepConfig {
  FieldPtr field;
  OperatorKind kind = OperatorKind::gradient;
  double p = 0.5;
  std::vector<double> qs{2.0};
  std::vector<double> deltas;  ///< strictly decreasing, at least three
  std::optional<Box> box;      ///< default: support box shrunk by max delta
  double spacing = 0.0;        ///< 0 selects default_sweep_spacing
  int radial_order = kDefaultRadialOrder;
  int angular_order = 0;       ///< 0 selects default_sweep_angular_order
  SobolevOptions sobolev;
  bool refinement_check = false;
  int threads = 1;
};

/// delta_min / 8 for n = 1. For n >= 2 the spacing follows the shortest
/// side of the evaluation box (256 cells for n = 2, 40 for n = 3): the
/// error field varies on the scale of the test field, not of delta.
double default_sweep_spacing(int n, double delta_min, const Box& box);

/// Angular order used by sweeps: 1, 8 and 4 for n = 1, 2, 3.
int default_sweep_angular_order(int n);

/// Evaluation box used when SweepConfig::box is unset.
Box default_sweep_box(const AnalyticField& f, double delta_max);

/// Nonlocal-vs-local errors over a horizon sweep, one report per q. Every
/// delta rebuilds the kernel normalization and the quadrature rule.
std::vector<ConvergenceReport> convergence_sweep(const SweepConfig& config);

}  // namespace nonlocal
