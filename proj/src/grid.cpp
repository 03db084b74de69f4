#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "parallel.hpp"

namespace nonlocal {

double GridFunction::cell_volume() const { return std::pow(spacing, dimension); }

std::array<int, kMaxDimension> GridFunction::index(std::size_t flat_index) const {
  std::array<int, kMaxDimension> idx{};
  idx[2] = static_cast<int>(flat_index % shape[2]);
  flat_index /= shape[2];
  idx[1] = static_cast<int>(flat_index % shape[1]);
  idx[0] = static_cast<int>(flat_index / shape[1]);
  return idx;
}

Point GridFunction::point(std::size_t flat_index) const {
  const auto idx = index(flat_index);
  Point x{};
  for (int k = 0; k < dimension; ++k) x[k] = lower[k] + spacing * idx[k];
  return x;
}

bool GridFunction::valid(std::size_t flat_index) const {
  const auto idx = index(flat_index);
  for (int k = 0; k < kMaxDimension; ++k)
    if (idx[k] < valid_begin[k] || idx[k] >= valid_end[k]) return false;
  return true;
}

std::size_t GridFunction::valid_count() const {
  std::size_t count = 1;
  for (int k = 0; k < kMaxDimension; ++k) count *= std::size_t(std::max(0, valid_end[k] - valid_begin[k]));
  return count;
}

Box GridFunction::box() const {
  Box b;
  b.dimension = dimension;
  for (int k = 0; k < dimension; ++k) {
    b.lower[k] = lower[k];
    b.upper[k] = lower[k] + spacing * (shape[k] - 1);
  }
  return b;
}

namespace {

GridFunction allocate(int n, int components, const Point& lower, double h, const std::array<int, 3>& shape) {
  GridFunction g;
  g.dimension = n;
  g.components = components;
  g.lower = lower;
  g.spacing = h;
  g.shape = shape;
  g.valid_begin = {0, 0, 0};
  g.valid_end = shape;
  g.values.assign(g.point_count() * components, 0.0);
  return g;
}

}  // namespace

GridFunction make_grid(const Box& box, int resolution, int components) {
  const int n = box.dimension;
  check_dimension(n);
  require(resolution >= 2, "grid resolution must be >= 2 points per axis");
  require(components >= 1, "grid needs at least one component");
  const double h = (box.upper[0] - box.lower[0]) / (resolution - 1);
  require(h > 0.0, "grid box must have positive extent");
  std::array<int, 3> shape{1, 1, 1};
  for (int k = 0; k < n; ++k) {
    const double hk = (box.upper[k] - box.lower[k]) / (resolution - 1);
    require(std::abs(hk - h) <= 1e-12 * h, "grid box must give equal spacing on every axis");
    shape[k] = resolution;
  }
  return allocate(n, components, box.lower, h, shape);
}

GridFunction make_grid_spacing(const Box& box, double h, int components) {
  const int n = box.dimension;
  check_dimension(n);
  require(h > 0.0 && std::isfinite(h), "grid spacing must be positive");
  std::array<int, 3> shape{1, 1, 1};
  for (int k = 0; k < n; ++k) {
    const double width = box.upper[k] - box.lower[k];
    require(width > 0.0, "grid box must have positive extent");
    shape[k] = static_cast<int>(std::floor(width / h + 1e-9)) + 1;
    require(shape[k] >= 2, "grid spacing is larger than the box");
  }
  return allocate(n, components, box.lower, h, shape);
}

GridFunction sample_to_grid(const AnalyticField& f, const Box& box, int resolution, int threads) {
  return sample_to_grid(f, make_grid(box, resolution, f.components()), threads);
}

GridFunction sample_to_grid(const AnalyticField& f, GridFunction grid, int threads) {
  require(grid.dimension == f.dimension(), "grid and field dimensions differ");
  grid.components = f.components();
  grid.values.assign(grid.point_count() * grid.components, 0.0);
  const int m = grid.components;
  for_each_block(grid.point_count(), 1024, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) f.eval(grid.point(i), std::span<double>(&grid.values[i * m], m));
  });
  return grid;
}

void write_csv(const GridFunction& g, std::ostream& out) {
  for (int k = 0; k < g.dimension; ++k) out << (k ? "," : "") << 'x' << (k + 1);
  for (int c = 0; c < g.components; ++c) out << ",u" << (c + 1);
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < g.point_count(); ++i) {
    if (!g.valid(i)) continue;
    const Point x = g.point(i);
    for (int k = 0; k < g.dimension; ++k) out << (k ? "," : "") << x[k];
    for (int c = 0; c < g.components; ++c) out << ',' << g.values[i * g.components + c];
    out << '\n';
  }
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "grid CSV is empty");
  int n = 0;
  int m = 0;
  {
    std::stringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) {
      if (!col.empty() && col[0] == 'x') ++n;
      else if (!col.empty() && col[0] == 'u') ++m;
      else throw PreconditionError("unexpected grid CSV column '" + col + "'");
    }
  }
  check_dimension(n);
  require(m >= 1, "grid CSV has no value columns");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    require(row.size() == std::size_t(n + m), "grid CSV row has the wrong number of columns");
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "grid CSV has no data rows");

  Point lower{};
  std::array<int, 3> shape{1, 1, 1};
  double h = 0.0;
  for (int k = 0; k < n; ++k) {
    std::vector<double> coords;
    for (const auto& r : rows) coords.push_back(r[k]);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    require(coords.size() >= 2, "grid CSV needs at least two points per axis");
    lower[k] = coords.front();
    shape[k] = static_cast<int>(coords.size());
    const double hk = (coords.back() - coords.front()) / (coords.size() - 1);
    if (k == 0) h = hk;
    require(std::abs(hk - h) <= 1e-9 * h, "grid CSV spacing differs between axes");
  }
  GridFunction g = allocate(n, m, lower, h, shape);
  require(rows.size() == g.point_count(), "grid CSV does not describe a complete grid");
  for (const auto& r : rows) {
    std::array<int, 3> idx{0, 0, 0};
    for (int k = 0; k < n; ++k) idx[k] = static_cast<int>(std::lround((r[k] - lower[k]) / h));
    const std::size_t f = g.flat(idx);
    for (int c = 0; c < m; ++c) g.values[f * m + c] = r[n + c];
  }
  return g;
}

}  // namespace nonlocal
