#pragma once

#include <optional>
#include <vector>

#include "fields.hpp"
#include "grid.hpp"

namespace nonlocal {

/// Geometric ladder of `count` radii ending at r_max: r_max / ratio^k,
/// returned in increasing order.
std::vector<double> geometric_radii(double r_max, int count = 32, double ratio = 1.3);

/// Evenly spaced radii step, 2 step, ..., r_max.
std::vector<double> dense_radii(double r_max, int count);

/// Discrete Hardy-Littlewood maximal function of |g|. At each vertex the
/// result is the largest, over `radii`, average of |g| on the grid points of
/// the closed ball of that radius; points outside the grid count as zero.
/// Vector grids use the Euclidean magnitude. Radii must not exceed half the
/// shortest box side.
GridFunction maximal_function(const GridFunction& g, const std::vector<double>& radii, int threads = 1);

struct MaximalReport {
  double b = 2.0;
  double f_norm = 0.0;
  double mf_norm = 0.0;
  std::optional<double> ratio;  ///< empty when f vanishes on the grid
  Box box;
  int resolution = 0;
  double spacing = 0.0;
  std::vector<double> radii;
};

/// ||f||_b and ||Mf||_b on a vertex grid over `box`. Empty `radii` selects
/// geometric_radii(half the shortest side). Throws NumericalError if a norm
/// is not finite or Mf falls below the smallest-ball average somewhere.
MaximalReport maximal_bound_check(const AnalyticField& f, double b, const Box& box, int resolution,
                                  std::vector<double> radii = {}, int threads = 1);

}  // namespace nonlocal
