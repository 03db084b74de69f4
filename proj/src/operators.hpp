#pragma once

#include <span>
#include <string>
#include <vector>

#include "common.hpp"
#include "fields.hpp"
#include "grid.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace nonlocal {

enum class OperatorKind { divergence, gradient, curl };

/// direct: integrand omega (u(x+y) - u(x)) o e.  convolutional: the
/// one-term form omega u(x+y) o e, equal because int omega e = 0.
enum class EvaluationPath { direct, convolutional };

std::string to_string(OperatorKind kind);
std::string to_string(EvaluationPath path);
/// Accepts div/divergence, grad/gradient, curl.
OperatorKind parse_operator_kind(const std::string& name);
EvaluationPath parse_evaluation_path(const std::string& name);

/// Nonlocal divergence, gradient or curl for one kernel and quadrature rule.
///
/// All operators use e = y/|y| for the offset y = x_hat - x, so that constant
/// fields map to zero and linear fields to their classical derivative.
class NonlocalOperator {
 public:
  NonlocalOperator(OperatorKind kind, Kernel kernel, BallQuadratureRule rule,
                   EvaluationPath path = EvaluationPath::direct);

  OperatorKind kind() const { return kind_; }
  EvaluationPath path() const { return path_; }
  const Kernel& kernel() const { return kernel_; }
  const BallQuadratureRule& rule() const { return rule_; }
  int dimension() const { return kernel_.dimension(); }
  int input_components() const;
  int output_components() const;

  /// Evaluates at x; `out` has output_components() entries.
  void apply(const AnalyticField& u, const Point& x, std::span<double> out) const;

 private:
  OperatorKind kind_;
  EvaluationPath path_;
  Kernel kernel_;
  BallQuadratureRule rule_;
  // Per node: omega(y_i) * w_i and the unit direction e_i.
  std::vector<double> weighted_;
  std::vector<Point> directions_;
};

double nonlocal_divergence_at(const AnalyticField& u, const Point& x, const NonlocalOperator& op);
std::vector<double> nonlocal_gradient_at(const AnalyticField& u, const Point& x, const NonlocalOperator& op);
std::vector<double> nonlocal_curl_at(const AnalyticField& u, const Point& x, const NonlocalOperator& op);

/// Classical operator of the same kind; out has output components.
void local_operator(OperatorKind kind, const AnalyticField& u, const Point& x, std::span<double> out);

/// Output components of `kind` in dimension n.
int operator_output_components(OperatorKind kind, int n);
/// Field components `kind` consumes in dimension n.
int operator_input_components(OperatorKind kind, int n);

/// Nonlocal operator at every point of `grid` (values are overwritten).
GridFunction evaluate_nonlocal(const NonlocalOperator& op, const AnalyticField& u, GridFunction grid, int threads = 1);
/// Classical operator at every point of `grid`.
GridFunction evaluate_local(OperatorKind kind, const AnalyticField& u, GridFunction grid, int threads = 1);

}  // namespace nonlocal
