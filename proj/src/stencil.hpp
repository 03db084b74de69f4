#pragma once

#include <vector>

#include "grid.hpp"
#include "kernel.hpp"
#include "operators.hpp"

namespace nonlocal {

/// Discrete convolution form of a nonlocal operator on a uniform grid:
///
///   (S u)(x) = sum_o  w_o (*) u(x + o h),
///
/// where (*) is the dot or scalar product for div and grad, and w_o x u for curl.
/// w_o is the integral of omega(y) e(y) over the grid cell centred at o h,
/// rescaled so the discrete second moment sum_o (o h)_j w_o,j equals one and
/// linear fields are reproduced exactly.
struct StencilOperator {
  OperatorKind kind = OperatorKind::divergence;
  int dimension = 1;
  double spacing = 0.0;
  double horizon = 0.0;
  std::vector<std::array<int, kMaxDimension>> offsets;
  std::vector<Point> weights;
  /// Discrete second moment of the raw cell integrals, before rescaling.
  double raw_moment = 0.0;
  /// Largest |o_k| over all offsets.
  int reach = 0;
};

/// Requires h <= delta / 4.
StencilOperator build_stencil(const Kernel& kernel, OperatorKind kind, double h);

/// Convolution of `g` with the stencil. The output is valid on the part of
/// g's valid region where every stencil offset lands on valid input; throws
/// PreconditionError when that region is empty.
GridFunction apply_stencil(const StencilOperator& op, const GridFunction& g, int threads = 1);

}  // namespace nonlocal
