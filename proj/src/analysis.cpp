#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nonlocal {

double lq_error(const GridFunction& a, const GridFunction& b, double q) {
  require(q >= 1.0, "L^q exponent must be >= 1");
  require(a.dimension == b.dimension && a.shape == b.shape && a.components == b.components &&
              a.lower == b.lower && a.spacing == b.spacing,
          "lq_error needs grids with identical box, resolution and components");
  std::array<int, 3> lo{}, hi{};
  for (int k = 0; k < 3; ++k) {
    lo[k] = std::max(a.valid_begin[k], b.valid_begin[k]);
    hi[k] = std::min(a.valid_end[k], b.valid_end[k]);
  }
  const bool sup = std::isinf(q);
  const int m = a.components;
  double acc = 0.0;
  std::array<int, 3> idx{};
  for (idx[0] = lo[0]; idx[0] < hi[0]; ++idx[0])
    for (idx[1] = lo[1]; idx[1] < hi[1]; ++idx[1])
      for (idx[2] = lo[2]; idx[2] < hi[2]; ++idx[2]) {
        const std::size_t f = a.flat(idx);
        double mag2 = 0.0;
        for (int c = 0; c < m; ++c) {
          const double d = a.values[f * m + c] - b.values[f * m + c];
          mag2 += d * d;
        }
        const double mag = std::sqrt(mag2);
        if (!std::isfinite(mag)) throw NumericalError("non-finite value in L^q error");
        if (sup)
          acc = std::max(acc, mag);
        else
          acc += std::pow(mag, q);
      }
  if (sup) return acc;
  return std::pow(acc * a.cell_volume(), 1.0 / q);
}

double c0_constant(int n, double p) {
  check_dimension(n);
  require(p > 0.0 && p < n, "c0 needs 0 < p < n");
  return n * (n - p + 1.0) * unit_ball_volume(n) / (12.0 * (n - p));
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [delta, error] : rows) {
    require(delta > 0.0, "rate fit needs positive deltas");
    if (error >= kExactThreshold) pts.emplace_back(std::log(delta), std::log(error));
  }
  require(pts.size() >= 2, "rate fit needs at least two rows with error >= 1e-12");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  require(sxx > 0.0, "rate fit needs at least two distinct deltas");
  RateFit fit;
  fit.order = sxy / sxx;
  fit.log_constant = my - fit.order * mx;
  return fit;
}

bool ConvergenceReport::bound_holds() const {
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.error <= r.bound; });
}

double ConvergenceReport::max_ratio() const {
  double r = 0.0;
  for (const auto& row : rows) r = std::max(r, row.ratio);
  return r;
}

double default_sweep_spacing(int n, double delta_min, const Box& box) {
  check_dimension(n);
  if (n == 1) return delta_min / 8.0;
  double shortest = kInfinity;
  for (int k = 0; k < n; ++k) shortest = std::min(shortest, box.upper[k] - box.lower[k]);
  return shortest / (n == 2 ? 256.0 : 40.0);
}

int default_sweep_angular_order(int n) {
  check_dimension(n);
  return n == 1 ? 1 : (n == 2 ? 8 : 4);
}

Box default_sweep_box(const AnalyticField& f, double delta_max) {
  Box box = f.support_box();
  for (int k = 0; k < f.dimension(); ++k) {
    box.lower[k] += delta_max;
    box.upper[k] -= delta_max;
    require(box.upper[k] > box.lower[k], "field support box is too small for the largest horizon");
  }
  return box;
}

namespace {

void validate(const SweepConfig& c) {
  require(c.field != nullptr, "sweep needs a field");
  const int n = c.field->dimension();
  require(c.deltas.size() >= 3, "a convergence sweep needs at least three deltas");
  for (std::size_t i = 0; i < c.deltas.size(); ++i) {
    require(c.deltas[i] > 0.0 && std::isfinite(c.deltas[i]), "deltas must be positive");
    if (i > 0) require(c.deltas[i] < c.deltas[i - 1], "deltas must be strictly decreasing");
  }
  require(!c.qs.empty(), "sweep needs at least one q");
  for (double q : c.qs) require(q >= 1.0, "q must be >= 1");
  require(c.field->components() == operator_input_components(c.kind, n),
          to_string(c.kind) + " needs a " + (c.kind == OperatorKind::gradient ? "scalar" : "vector") + " field");
  require(c.kind != OperatorKind::curl || n == 3, "nonlocal curl is defined for n = 3 only");
  require(c.spacing >= 0.0, "grid spacing must be positive");
}

GridFunction nonlocal_on(const SweepConfig& c, double delta, const GridFunction& grid, int angular) {
  const int n = c.field->dimension();
  Kernel kernel(n, c.p, delta);
  NonlocalOperator op(c.kind, kernel, build_rule(n, c.p, delta, c.radial_order, angular));
  return evaluate_nonlocal(op, *c.field, grid, c.threads);
}

}  // namespace

std::vector<ConvergenceReport> convergence_sweep(const SweepConfig& config) {
  validate(config);
  const AnalyticField& field = *config.field;
  const int n = field.dimension();
  const double delta_max = config.deltas.front();
  const double delta_min = config.deltas.back();
  const int angular = config.angular_order > 0 ? config.angular_order : default_sweep_angular_order(n);

  Box box = config.box.value_or(default_sweep_box(field, delta_max));
  box.dimension = n;
  const Box& support = field.support_box();
  for (int k = 0; k < n; ++k) {
    require(box.upper[k] > box.lower[k], "evaluation box must have positive extent");
    require(box.lower[k] - delta_max >= support.lower[k] - 1e-12 && box.upper[k] + delta_max <= support.upper[k] + 1e-12,
            "evaluation box must lie inside the field support box by at least the largest delta");
  }
  const double h = config.spacing > 0.0 ? config.spacing : default_sweep_spacing(n, delta_min, box);

  GridFunction grid = make_grid_spacing(box, h);
  const GridFunction local = evaluate_local(config.kind, field, grid, config.threads);
  const double c0 = c0_constant(n, config.p);

  std::vector<ConvergenceReport> reports;
  for (double q : config.qs) {
    ConvergenceReport r;
    r.field = field.name();
    r.kind = config.kind;
    r.n = n;
    r.p = config.p;
    r.q = q;
    r.c0 = c0;
    r.radial_order = config.radial_order;
    r.angular_order = angular;
    r.box = grid.box();
    r.spacing = h;
    r.resolution = grid.shape;
    reports.push_back(std::move(r));
  }
  std::vector<double> norms;
  for (double q : config.qs) norms.push_back(sobolev_norm(field, q, config.sobolev));

  std::vector<double> last_errors(config.qs.size());
  for (double delta : config.deltas) {
    const GridFunction nonlocal = nonlocal_on(config, delta, grid, angular);
    for (std::size_t iq = 0; iq < config.qs.size(); ++iq) {
      ConvergenceRow row;
      row.delta = delta;
      row.q = config.qs[iq];
      row.error = lq_error(nonlocal, local, row.q);
      row.sobolev_norm = norms[iq];
      row.bound = c0 * delta * delta * norms[iq];
      row.ratio = row.bound > 0.0 ? row.error / row.bound : (row.error > 0.0 ? kInfinity : 0.0);
      reports[iq].rows.push_back(row);
      last_errors[iq] = row.error;
    }
  }

  for (auto& r : reports) {
    std::vector<std::pair<double, double>> pts;
    std::size_t usable = 0;
    for (const auto& row : r.rows) {
      pts.emplace_back(row.delta, row.error);
      if (row.error >= kExactThreshold) ++usable;
    }
    if (usable >= 2) r.fit = rate_fit(pts);
  }

  if (config.refinement_check) {
    GridFunction fine = make_grid_spacing(box, 0.5 * h);
    const GridFunction fine_local = evaluate_local(config.kind, field, fine, config.threads);
    const GridFunction fine_nonlocal = nonlocal_on(config, delta_min, fine, angular);
    for (std::size_t iq = 0; iq < config.qs.size(); ++iq) {
      const double e = lq_error(fine_nonlocal, fine_local, config.qs[iq]);
      const double base = last_errors[iq];
      reports[iq].refinement_change = base > kExactThreshold ? std::abs(e - base) / base : 0.0;
    }
  }
  return reports;
}

}  // namespace nonlocal
