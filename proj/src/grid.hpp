#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "common.hpp"
#include "fields.hpp"

namespace nonlocal {

/// Field samples at the vertices of a uniform grid with equal spacing h on
/// every axis. Values are point-major (values[point * components + c]);
/// point indices are row-major with the last axis fastest.
///
/// Only points inside [valid_begin, valid_end) on every axis carry
/// meaningful data; whole-grid operators shrink this region.
struct GridFunction {
  int dimension = 1;
  int components = 1;
  Point lower{};
  double spacing = 0.0;
  std::array<int, kMaxDimension> shape{1, 1, 1};
  std::array<int, kMaxDimension> valid_begin{0, 0, 0};
  std::array<int, kMaxDimension> valid_end{1, 1, 1};
  std::vector<double> values;

  std::size_t point_count() const { return std::size_t(shape[0]) * shape[1] * shape[2]; }
  double cell_volume() const;
  std::array<int, kMaxDimension> index(std::size_t flat) const;
  std::size_t flat(const std::array<int, kMaxDimension>& idx) const {
    return (std::size_t(idx[0]) * shape[1] + idx[1]) * shape[2] + idx[2];
  }
  Point point(std::size_t flat_index) const;
  bool valid(std::size_t flat_index) const;
  std::size_t valid_count() const;
  Box box() const;
};

/// Empty grid over `box` with `resolution` points per axis. The box must
/// give the same spacing on every axis.
GridFunction make_grid(const Box& box, int resolution, int components = 1);

/// Empty grid starting at box.lower with spacing h, covering the box.
GridFunction make_grid_spacing(const Box& box, double h, int components = 1);

/// Vertex samples of a field.
GridFunction sample_to_grid(const AnalyticField& f, const Box& box, int resolution, int threads = 1);
GridFunction sample_to_grid(const AnalyticField& f, GridFunction grid, int threads = 1);

/// CSV with header x1..xn,u1..um (17 significant digits), valid points only.
void write_csv(const GridFunction& g, std::ostream& out);

/// Reads write_csv output back; the grid must be complete.
GridFunction read_csv(std::istream& in);

}  // namespace nonlocal
