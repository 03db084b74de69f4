#include "fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"

namespace nonlocal {
namespace {

Box cube(int n, double lo, double hi) {
  Box b;
  b.dimension = n;
  for (int i = 0; i < n; ++i) {
    b.lower[i] = lo;
    b.upper[i] = hi;
  }
  return b;
}

Box enclosing(int n, const std::vector<Point>& centers, double half_width) {
  Box b;
  b.dimension = n;
  for (int i = 0; i < n; ++i) {
    b.lower[i] = kInfinity;
    b.upper[i] = -kInfinity;
    for (const Point& c : centers) {
      b.lower[i] = std::min(b.lower[i], c[i] - half_width);
      b.upper[i] = std::max(b.upper[i], c[i] + half_width);
    }
  }
  return b;
}

// Distinct per-component centres for vector variants of radial fields.
constexpr std::array<Point, 3> kCenterOffsets = {{{0.0, 0.3, -0.2}, {0.25, 0.0, 0.3}, {-0.3, 0.2, 0.0}}};

std::vector<Point> component_centers(int n, bool vector, double scale) {
  std::vector<Point> centers;
  const int m = vector ? n : 1;
  for (int i = 0; i < m; ++i) {
    Point c{};
    if (vector)
      for (int k = 0; k < n; ++k) c[k] = scale * kCenterOffsets[i][k];
    centers.push_back(c);
  }
  return centers;
}

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<MultiIndex> multi_indices(int n, int max_order) {
  check_dimension(n);
  std::vector<MultiIndex> out;
  for (int total = 0; total <= max_order; ++total) {
    for (int a0 = total; a0 >= 0; --a0) {
      if (n == 1) {
        if (a0 == total) out.push_back({a0, 0, 0});
        continue;
      }
      for (int a1 = total - a0; a1 >= 0; --a1) {
        const int a2 = total - a0 - a1;
        if (n == 2 && a2 != 0) continue;
        out.push_back({a0, a1, a2});
      }
    }
  }
  return out;
}

AnalyticField::AnalyticField(std::string name, int dimension, int components, Box support)
    : name_(std::move(name)), n_(dimension), m_(components), support_(support) {
  check_dimension(dimension);
  require(components >= 1, "field must have at least one component");
  support_.dimension = dimension;
}

void AnalyticField::eval(const Point& x, std::span<double> out) const { partial(MultiIndex{}, x, out); }

void AnalyticField::partials(std::span<const MultiIndex> alphas, const Point& x, std::span<double> out) const {
  for (std::size_t a = 0; a < alphas.size(); ++a) partial(alphas[a], x, out.subspan(a * m_, m_));
}

void AnalyticField::check_alpha(const MultiIndex& alpha) const {
  for (int k = 0; k < kMaxDimension; ++k) {
    require(alpha[k] >= 0, "negative multi-index entry");
    if (k >= n_) require(alpha[k] == 0, "multi-index has entries beyond the field dimension");
  }
  require(order(alpha) <= 3, "partials are available through order 3");
}

// ---------------------------------------------------------------------------

PolynomialField::PolynomialField(std::string name, int n, int m, std::vector<double> constant,
                                 std::vector<double> linear, std::vector<double> quadratic, Box support)
    : AnalyticField(std::move(name), n, m, support),
      c_(std::move(constant)),
      a_(std::move(linear)),
      q_(std::move(quadratic)) {
  if (c_.empty()) c_.assign(m, 0.0);
  if (a_.empty()) a_.assign(std::size_t(m) * n, 0.0);
  if (q_.empty()) q_.assign(std::size_t(m) * n * n, 0.0);
  require(c_.size() == std::size_t(m), "polynomial constant term needs m entries");
  require(a_.size() == std::size_t(m) * n, "polynomial linear term needs m*n entries");
  require(q_.size() == std::size_t(m) * n * n, "polynomial quadratic term needs m*n*n entries");
}

void PolynomialField::partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const {
  check_alpha(alpha);
  const int n = dimension();
  const int m = components();
  auto q = [&](int i, int j, int k) { return q_[(std::size_t(i) * n + j) * n + k]; };
  // Expand alpha into a list of derivative directions.
  int dirs[3];
  int count = 0;
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < alpha[k]; ++r) dirs[count++] = k;

  for (int i = 0; i < m; ++i) {
    double v = 0.0;
    if (count == 0) {
      v = c_[i];
      for (int j = 0; j < n; ++j) {
        v += a_[i * n + j] * x[j];
        for (int k = 0; k < n; ++k) v += q(i, j, k) * x[j] * x[k];
      }
    } else if (count == 1) {
      const int j = dirs[0];
      v = a_[i * n + j];
      for (int k = 0; k < n; ++k) v += (q(i, j, k) + q(i, k, j)) * x[k];
    } else if (count == 2) {
      v = q(i, dirs[0], dirs[1]) + q(i, dirs[1], dirs[0]);
    }
    out[i] = v;
  }
}

// ---------------------------------------------------------------------------

RadialProfileField::RadialProfileField(std::string name, int n, Profile profile, std::vector<Point> centers,
                                       double scale, double amplitude, Box support)
    : AnalyticField(std::move(name), n, static_cast<int>(centers.size()), support),
      profile_(profile),
      centers_(std::move(centers)),
      scale_(scale),
      amplitude_(amplitude) {
  require(scale > 0.0, "radial profile scale must be positive");
}

std::array<double, 4> RadialProfileField::profile(double s) const {
  if (profile_ == Profile::gaussian) {
    const double f = amplitude_ * std::exp(-s);
    return {f, -f, f, -f};
  }
  if (s >= 1.0) return {0.0, 0.0, 0.0, 0.0};
  const double w = 1.0 / (1.0 - s);
  const double f = amplitude_ * std::exp(1.0 - w);
  const double g1 = -w * w;
  const double g2 = -2.0 * w * w * w;
  const double g3 = -6.0 * w * w * w * w;
  return {f, g1 * f, (g2 + g1 * g1) * f, (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * f};
}

void RadialProfileField::partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const {
  partials(std::span<const MultiIndex>(&alpha, 1), x, out);
}

void RadialProfileField::partials(std::span<const MultiIndex> alphas, const Point& x, std::span<double> out) const {
  const int n = dimension();
  const int m = components();
  const double inv_r2 = 1.0 / (scale_ * scale_);
  for (const MultiIndex& alpha : alphas) check_alpha(alpha);
  for (int i = 0; i < m; ++i) {
    // s = |x - c|^2 / R^2 has ds_k = 2 (x_k - c_k) / R^2 and d2s_kl = 2 delta_kl / R^2.
    double s = 0.0;
    double ds[kMaxDimension] = {0.0, 0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const double d = x[k] - centers_[i][k];
      s += d * d;
      ds[k] = 2.0 * d * inv_r2;
    }
    s *= inv_r2;
    const double d2 = 2.0 * inv_r2;
    const std::array<double, 4> F = profile(s);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      int dirs[3];
      int count = 0;
      for (int k = 0; k < n; ++k)
        for (int r = 0; r < alphas[a][k]; ++r) dirs[count++] = k;
      double v = 0.0;
      switch (count) {
        case 0:
          v = F[0];
          break;
        case 1:
          v = F[1] * ds[dirs[0]];
          break;
        case 2: {
          const int j = dirs[0], k = dirs[1];
          v = F[2] * ds[j] * ds[k] + (j == k ? F[1] * d2 : 0.0);
          break;
        }
        default: {
          const int j = dirs[0], k = dirs[1], l = dirs[2];
          const double mixed = (j == k ? d2 * ds[l] : 0.0) + (j == l ? d2 * ds[k] : 0.0) + (k == l ? d2 * ds[j] : 0.0);
          v = F[3] * ds[j] * ds[k] * ds[l] + F[2] * mixed;
          break;
        }
      }
      out[a * m + i] = v;
    }
  }
}

// ---------------------------------------------------------------------------

TrigField::TrigField(std::string name, int n, Point wave, std::vector<double> phases, Box support)
    : AnalyticField(std::move(name), n, static_cast<int>(phases.size()), support),
      wave_(wave),
      phases_(std::move(phases)) {}

void TrigField::partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const {
  check_alpha(alpha);
  const int n = dimension();
  double arg = 0.0;
  double factor = 1.0;
  for (int k = 0; k < n; ++k) {
    arg += wave_[k] * x[k];
    factor *= std::pow(wave_[k], alpha[k]);
  }
  const double shift = order(alpha) * std::numbers::pi / 2.0;
  for (int i = 0; i < components(); ++i) out[i] = factor * std::sin(arg + phases_[i] + shift);
}

// ---------------------------------------------------------------------------

ProductField::ProductField(std::string name, FieldPtr scalar, FieldPtr other, Box support)
    : AnalyticField(std::move(name), other->dimension(), other->components(), support),
      scalar_(std::move(scalar)),
      other_(std::move(other)) {
  require(scalar_->components() == 1, "product field needs a scalar first factor");
  require(scalar_->dimension() == other_->dimension(), "product field factors differ in dimension");
}

void ProductField::partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const {
  check_alpha(alpha);
  const int m = components();
  std::fill(out.begin(), out.begin() + m, 0.0);
  double s = 0.0;
  double buf[kMaxDimension];
  for (int b0 = 0; b0 <= alpha[0]; ++b0)
    for (int b1 = 0; b1 <= alpha[1]; ++b1)
      for (int b2 = 0; b2 <= alpha[2]; ++b2) {
        const MultiIndex beta{b0, b1, b2};
        const MultiIndex rest{alpha[0] - b0, alpha[1] - b1, alpha[2] - b2};
        const double coeff = binomial(alpha[0], b0) * binomial(alpha[1], b1) * binomial(alpha[2], b2);
        scalar_->partial(beta, x, std::span<double>(&s, 1));
        other_->partial(rest, x, std::span<double>(buf, m));
        for (int i = 0; i < m; ++i) out[i] += coeff * s * buf[i];
      }
}

// ---------------------------------------------------------------------------

FunctionField::FunctionField(std::string name, int n, int m, Function f, Box support)
    : AnalyticField(std::move(name), n, m, support), f_(std::move(f)) {}

void FunctionField::partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const {
  require(order(alpha) == 0, "point-function fields have no derivative information");
  f_(x, out);
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& builtin_field_names() {
  static const std::vector<std::string> names = {"constant", "linear",    "quadratic", "gaussian",
                                                 "bump",     "trig-bump", "swirl"};
  return names;
}

FieldPtr make_field(const FieldSpec& spec) {
  const int n = spec.dimension;
  check_dimension(n);
  const int m = spec.vector ? n : 1;
  const Box poly_box = spec.box.value_or(cube(n, -1.0, 1.0));
  const std::string& name = spec.name;

  if (name == "constant") {
    return std::make_shared<PolynomialField>(name, n, m, std::vector<double>(m, spec.c.value_or(1.0)),
                                             std::vector<double>{}, std::vector<double>{}, poly_box);
  }
  if (name == "linear" || name == "quadratic") {
    std::vector<double> constant(m, spec.c.value_or(0.0));
    std::vector<double> linear;
    if (spec.vector) {
      if (spec.A.empty()) {
        linear.assign(std::size_t(n) * n, 0.0);
        for (int i = 0; i < n; ++i) linear[i * n + i] = 1.0;
      } else {
        require(spec.A.size() == std::size_t(n) * n, "linear part A needs n*n entries");
        linear = spec.A;
      }
      if (!spec.b.empty()) {
        require(spec.b.size() == std::size_t(n), "vector offset b needs n entries");
        for (int i = 0; i < n; ++i) constant[i] += spec.b[i];
      }
    } else {
      require(spec.A.empty(), "A is only meaningful for vector fields; use b for a scalar gradient");
      if (spec.b.empty()) {
        linear.assign(n, 1.0);
      } else {
        require(spec.b.size() == std::size_t(n), "scalar gradient b needs n entries");
        linear = spec.b;
      }
    }
    std::vector<double> quad;
    if (name == "quadratic") {
      const std::size_t block = std::size_t(n) * n;
      if (spec.H.empty()) {
        quad.assign(m * block, 0.0);
        for (int i = 0; i < m; ++i)
          for (int k = 0; k < n; ++k) quad[i * block + k * n + k] = 1.0 + i;
      } else if (spec.H.size() == block) {
        for (int i = 0; i < m; ++i) quad.insert(quad.end(), spec.H.begin(), spec.H.end());
      } else {
        require(spec.H.size() == m * block, "quadratic form H needs n*n or m*n*n entries");
        quad = spec.H;
      }
    } else {
      require(spec.H.empty(), "H is only meaningful for quadratic fields");
    }
    return std::make_shared<PolynomialField>(name, n, m, constant, linear, quad, poly_box);
  }
  if (name == "gaussian") {
    auto centers = component_centers(n, spec.vector, 1.0);
    const Box box = enclosing(n, centers, 7.0);
    return std::make_shared<RadialProfileField>(name, n, Profile::gaussian, centers, 1.0, 1.0, box);
  }
  if (name == "bump") {
    require(spec.radius > 0.0, "bump radius must be positive");
    auto centers = component_centers(n, spec.vector, spec.radius / 3.0);
    const Box box = enclosing(n, centers, spec.radius + 0.5);
    return std::make_shared<RadialProfileField>(name, n, Profile::bump, centers, spec.radius, 1.0, box);
  }
  if (name == "trig-bump") {
    require(spec.radius > 0.0, "bump radius must be positive");
    Point wave{1.5, 1.0, 0.5};
    if (!spec.wave.empty()) {
      require(spec.wave.size() == std::size_t(n), "wave vector needs n entries");
      for (int k = 0; k < n; ++k) wave[k] = spec.wave[k];
    }
    std::vector<double> phases;
    for (int i = 0; i < m; ++i) phases.push_back(i * std::numbers::pi / 3.0);
    const Box box = cube(n, -(spec.radius + 0.5), spec.radius + 0.5);
    auto window = std::make_shared<RadialProfileField>("bump", n, Profile::bump, std::vector<Point>{Point{}},
                                                       spec.radius, 1.0, box);
    auto trig = std::make_shared<TrigField>("trig", n, wave, phases, box);
    return std::make_shared<ProductField>(name, window, trig, box);
  }
  if (name == "swirl") {
    require(n == 3, "swirl field is defined for n = 3");
    const Box box = cube(3, -7.0, 7.0);
    auto window = std::make_shared<RadialProfileField>("gaussian", 3, Profile::gaussian, std::vector<Point>{Point{}},
                                                       1.0, 1.0, box);
    std::vector<double> rotation = {0, -1, 0, 1, 0, 0, 0, 0, 0};
    auto rot = std::make_shared<PolynomialField>("rotation", 3, 3, std::vector<double>{}, rotation,
                                                 std::vector<double>{}, box);
    return std::make_shared<ProductField>(name, window, rot, box);
  }
  throw PreconditionError("unknown field name '" + name + "'");
}

FieldPtr builtin_field(const std::string& name, int n, bool vector) {
  FieldSpec spec;
  spec.name = name;
  spec.dimension = n;
  spec.vector = vector;
  return make_field(spec);
}

// ---------------------------------------------------------------------------

double local_divergence(const AnalyticField& f, const Point& x) {
  const int n = f.dimension();
  require(f.components() == n, "divergence needs a vector field with n components");
  double div = 0.0;
  double buf[kMaxDimension];
  for (int j = 0; j < n; ++j) {
    MultiIndex alpha{};
    alpha[j] = 1;
    f.partial(alpha, x, std::span<double>(buf, n));
    div += buf[j];
  }
  return div;
}

std::vector<double> local_gradient(const AnalyticField& f, const Point& x) {
  const int n = f.dimension();
  require(f.components() == 1, "gradient needs a scalar field");
  std::vector<double> grad(n);
  for (int j = 0; j < n; ++j) {
    MultiIndex alpha{};
    alpha[j] = 1;
    f.partial(alpha, x, std::span<double>(&grad[j], 1));
  }
  return grad;
}

std::vector<double> local_curl(const AnalyticField& f, const Point& x) {
  require(f.dimension() == 3 && f.components() == 3, "curl needs a 3-component field on R^3");
  double d[3][3];  // d[j][i] = d_j u_i
  for (int j = 0; j < 3; ++j) {
    MultiIndex alpha{};
    alpha[j] = 1;
    f.partial(alpha, x, std::span<double>(d[j], 3));
  }
  return {d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]};
}

double sobolev_norm(const AnalyticField& f, double q, const SobolevOptions& options) {
  require(q >= 1.0, "Sobolev exponent q must be >= 1");
  require(options.order >= 0 && options.order <= 3, "Sobolev order must be in 0..3");
  const int n = f.dimension();
  const int m = f.components();
  int points = options.points_per_axis;
  if (points == 0) points = n == 1 ? 4001 : (n == 2 ? 401 : 81);
  require(points >= 2, "Sobolev grid needs at least 2 points per axis");

  const Box& box = f.support_box();
  Point h{};
  double cell = 1.0;
  for (int k = 0; k < n; ++k) {
    h[k] = (box.upper[k] - box.lower[k]) / (points - 1);
    cell *= h[k];
  }
  const std::vector<MultiIndex> alphas = multi_indices(n, options.order);
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= points;

  const bool sup = std::isinf(q);
  constexpr std::size_t kBlock = 4096;
  std::vector<double> partial_sums((total + kBlock - 1) / kBlock, 0.0);
  for_each_block(total, kBlock, options.threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
    std::vector<double> values(alphas.size() * m);
    double acc = 0.0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      Point x{};
      std::size_t rem = idx;
      for (int k = n - 1; k >= 0; --k) {
        x[k] = box.lower[k] + h[k] * double(rem % points);
        rem /= points;
      }
      f.partials(alphas, x, values);
      for (double v : values) {
        if (!std::isfinite(v)) throw NumericalError("field partial is not finite in Sobolev norm");
        const double a = std::abs(v);
        if (sup)
          acc = std::max(acc, a);
        else
          acc += std::pow(a, q);
      }
    }
    partial_sums[block] = acc;
  });

  if (sup) return *std::max_element(partial_sums.begin(), partial_sums.end());
  double sum = 0.0;
  for (double s : partial_sums) sum += s;
  return std::pow(sum * cell, 1.0 / q);
}

}  // namespace nonlocal
