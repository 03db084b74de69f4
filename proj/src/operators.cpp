#include "operators.hpp"

#include <cmath>

#include "parallel.hpp"

namespace nonlocal {

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::divergence: return "div";
    case OperatorKind::gradient: return "grad";
    default: return "curl";
  }
}

std::string to_string(EvaluationPath path) { return path == EvaluationPath::direct ? "direct" : "convolutional"; }

OperatorKind parse_operator_kind(const std::string& name) {
  if (name == "div" || name == "divergence") return OperatorKind::divergence;
  if (name == "grad" || name == "gradient") return OperatorKind::gradient;
  if (name == "curl") return OperatorKind::curl;
  throw PreconditionError("unknown operator '" + name + "' (expected div, grad or curl)");
}

EvaluationPath parse_evaluation_path(const std::string& name) {
  if (name == "direct") return EvaluationPath::direct;
  if (name == "convolutional" || name == "conv") return EvaluationPath::convolutional;
  throw PreconditionError("unknown evaluation path '" + name + "' (expected direct or convolutional)");
}

int operator_output_components(OperatorKind kind, int n) { return kind == OperatorKind::divergence ? 1 : n; }
int operator_input_components(OperatorKind kind, int n) { return kind == OperatorKind::gradient ? 1 : n; }

NonlocalOperator::NonlocalOperator(OperatorKind kind, Kernel kernel, BallQuadratureRule rule, EvaluationPath path)
    : kind_(kind), path_(path), kernel_(kernel), rule_(std::move(rule)) {
  const int n = kernel_.dimension();
  require(rule_.dimension == n && rule_.exponent == kernel_.exponent() && rule_.horizon == kernel_.horizon(),
          "quadrature rule was built for a different (n, p, delta) than the kernel");
  require(kind != OperatorKind::curl || n == 3, "nonlocal curl is defined for n = 3 only");
  weighted_.resize(rule_.size());
  directions_.resize(rule_.size());
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    const Point& y = rule_.nodes[i];
    double r2 = 0.0;
    for (int k = 0; k < n; ++k) r2 += y[k] * y[k];
    const double r = std::sqrt(r2);
    weighted_[i] = rule_.weights[i] * kernel_.at_radius(r);
    Point e{};
    for (int k = 0; k < n; ++k) e[k] = y[k] / r;
    directions_[i] = e;
  }
}

int NonlocalOperator::input_components() const { return operator_input_components(kind_, dimension()); }
int NonlocalOperator::output_components() const { return operator_output_components(kind_, dimension()); }

void NonlocalOperator::apply(const AnalyticField& u, const Point& x, std::span<double> out) const {
  const int n = dimension();
  const int m = input_components();
  require(u.dimension() == n, "field dimension does not match the operator");
  require(u.components() == m,
          to_string(kind_) + " needs a field with " + std::to_string(m) + " component(s), got " +
              std::to_string(u.components()));

  double center[kMaxDimension] = {0.0, 0.0, 0.0};
  if (path_ == EvaluationPath::direct) u.eval(x, std::span<double>(center, m));

  double acc[kMaxDimension] = {0.0, 0.0, 0.0};
  double value[kMaxDimension];
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    Point xi = x;
    for (int k = 0; k < n; ++k) xi[k] += rule_.nodes[i][k];
    u.eval(xi, std::span<double>(value, m));
    const double c = weighted_[i];
    const Point& e = directions_[i];
    switch (kind_) {
      case OperatorKind::divergence: {
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += (value[k] - center[k]) * e[k];
        acc[0] += c * dot;
        break;
      }
      case OperatorKind::gradient: {
        const double d = c * (value[0] - center[0]);
        for (int k = 0; k < n; ++k) acc[k] += d * e[k];
        break;
      }
      case OperatorKind::curl: {
        const double d0 = value[0] - center[0], d1 = value[1] - center[1], d2 = value[2] - center[2];
        // e x (u_hat - u): this orientation reproduces +curl on linear fields.
        acc[0] += c * (e[1] * d2 - e[2] * d1);
        acc[1] += c * (e[2] * d0 - e[0] * d2);
        acc[2] += c * (e[0] * d1 - e[1] * d0);
        break;
      }
    }
  }
  const int outc = output_components();
  for (int k = 0; k < outc; ++k) {
    if (!std::isfinite(acc[k])) throw NumericalError("non-finite field value inside the horizon");
    out[k] = acc[k];
  }
}

double nonlocal_divergence_at(const AnalyticField& u, const Point& x, const NonlocalOperator& op) {
  require(op.kind() == OperatorKind::divergence, "operator is not a divergence");
  double v = 0.0;
  op.apply(u, x, std::span<double>(&v, 1));
  return v;
}

std::vector<double> nonlocal_gradient_at(const AnalyticField& u, const Point& x, const NonlocalOperator& op) {
  require(op.kind() == OperatorKind::gradient, "operator is not a gradient");
  std::vector<double> v(op.output_components());
  op.apply(u, x, v);
  return v;
}

std::vector<double> nonlocal_curl_at(const AnalyticField& u, const Point& x, const NonlocalOperator& op) {
  require(op.kind() == OperatorKind::curl, "operator is not a curl");
  std::vector<double> v(3);
  op.apply(u, x, v);
  return v;
}

void local_operator(OperatorKind kind, const AnalyticField& u, const Point& x, std::span<double> out) {
  switch (kind) {
    case OperatorKind::divergence:
      out[0] = local_divergence(u, x);
      break;
    case OperatorKind::gradient: {
      const auto g = local_gradient(u, x);
      std::copy(g.begin(), g.end(), out.begin());
      break;
    }
    case OperatorKind::curl: {
      const auto c = local_curl(u, x);
      std::copy(c.begin(), c.end(), out.begin());
      break;
    }
  }
}

GridFunction evaluate_nonlocal(const NonlocalOperator& op, const AnalyticField& u, GridFunction grid, int threads) {
  const int m = op.output_components();
  grid.components = m;
  grid.values.assign(grid.point_count() * m, 0.0);
  for_each_block(grid.point_count(), 256, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) op.apply(u, grid.point(i), std::span<double>(&grid.values[i * m], m));
  });
  return grid;
}

GridFunction evaluate_local(OperatorKind kind, const AnalyticField& u, GridFunction grid, int threads) {
  const int m = operator_output_components(kind, u.dimension());
  grid.components = m;
  grid.values.assign(grid.point_count() * m, 0.0);
  for_each_block(grid.point_count(), 1024, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      local_operator(kind, u, grid.point(i), std::span<double>(&grid.values[i * m], m));
  });
  return grid;
}

}  // namespace nonlocal
