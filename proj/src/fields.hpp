#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"

namespace nonlocal {

/// All multi-indices in n variables with |alpha| <= max_order, ordered by
/// total order and then lexicographically (alpha = 0 first).
std::vector<MultiIndex> multi_indices(int n, int max_order);

/// Scalar (components() == 1) or vector field on R^n with closed-form
/// partial derivatives through order 3.
///
/// support_box() bounds the region outside which the field and its partials
/// are zero or below 1e-14; norms over R^n are computed on that box.
class AnalyticField {
 public:
  AnalyticField(std::string name, int dimension, int components, Box support);
  virtual ~AnalyticField() = default;

  const std::string& name() const { return name_; }
  int dimension() const { return n_; }
  int components() const { return m_; }
  const Box& support_box() const { return support_; }

  /// Field value; out has components() entries.
  virtual void eval(const Point& x, std::span<double> out) const;

  /// d^alpha of every component at x, |alpha| <= 3.
  virtual void partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const = 0;

  /// Partials for each index in `alphas`, component-major per index:
  /// out[a * components() + i] = d^alphas[a] u_i(x).
  virtual void partials(std::span<const MultiIndex> alphas, const Point& x, std::span<double> out) const;

 protected:
  void check_alpha(const MultiIndex& alpha) const;

 private:
  std::string name_;
  int n_;
  int m_;
  Box support_;
};

using FieldPtr = std::shared_ptr<const AnalyticField>;

/// u_i(x) = c_i + sum_j A_ij x_j + sum_jk Q_ijk x_j x_k.
class PolynomialField final : public AnalyticField {
 public:
  /// constant: m entries; linear: m*n row-major; quadratic: m*n*n.
  PolynomialField(std::string name, int n, int m, std::vector<double> constant, std::vector<double> linear,
                  std::vector<double> quadratic, Box support);

  void partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const override;

 private:
  std::vector<double> c_;
  std::vector<double> a_;
  std::vector<double> q_;
};

/// Radial profiles F(s) of the scaled squared distance s = |x - c|^2 / R^2.
enum class Profile {
  gaussian,  ///< F(s) = exp(-s)
  bump,      ///< F(s) = exp(1 - 1/(1 - s)) for s < 1, else 0
};

/// Component i is amplitude * F(|x - centers[i]|^2 / R^2).
class RadialProfileField final : public AnalyticField {
 public:
  RadialProfileField(std::string name, int n, Profile profile, std::vector<Point> centers, double scale,
                     double amplitude, Box support);

  void partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const override;
  void partials(std::span<const MultiIndex> alphas, const Point& x, std::span<double> out) const override;

 private:
  // F and its first three derivatives at s.
  std::array<double, 4> profile(double s) const;

  Profile profile_;
  std::vector<Point> centers_;
  double scale_;
  double amplitude_;
};

/// Component i is sin(k . x + phase_i).
class TrigField final : public AnalyticField {
 public:
  TrigField(std::string name, int n, Point wave, std::vector<double> phases, Box support);
  void partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const override;

 private:
  Point wave_;
  std::vector<double> phases_;
};

/// Product of a scalar field with a scalar or vector field (Leibniz rule).
class ProductField final : public AnalyticField {
 public:
  ProductField(std::string name, FieldPtr scalar, FieldPtr other, Box support);
  void partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const override;

 private:
  FieldPtr scalar_;
  FieldPtr other_;
};

/// Field given only by point values; partial() supports alpha = 0 only.
class FunctionField final : public AnalyticField {
 public:
  using Function = std::function<void(const Point&, std::span<double>)>;
  FunctionField(std::string name, int n, int m, Function f, Box support);
  void partial(const MultiIndex& alpha, const Point& x, std::span<double> out) const override;

 private:
  Function f_;
};

/// Parameters of a builtin field. Unset coefficients take per-field defaults.
struct FieldSpec {
  std::string name = "gaussian";
  int dimension = 1;
  bool vector = false;
  std::optional<double> c;   ///< constant value / polynomial offset
  std::vector<double> A;     ///< linear part of a vector field (n*n, row-major)
  std::vector<double> b;     ///< scalar gradient, or vector offset
  std::vector<double> H;     ///< quadratic form (n*n, or m*n*n for vectors)
  double radius = 10.0;       ///< bump support radius
  std::vector<double> wave;  ///< trig-bump wave vector
  std::optional<Box> box;    ///< support box override (polynomials)
};

/// Names accepted by make_field.
const std::vector<std::string>& builtin_field_names();

/// Builds constant, linear, quadratic, gaussian, bump, trig-bump or swirl.
/// Throws PreconditionError for unknown names or malformed coefficients.
FieldPtr make_field(const FieldSpec& spec);
FieldPtr builtin_field(const std::string& name, int n, bool vector = false);

double local_divergence(const AnalyticField& f, const Point& x);
std::vector<double> local_gradient(const AnalyticField& f, const Point& x);
std::vector<double> local_curl(const AnalyticField& f, const Point& x);

struct SobolevOptions {
  int order = 3;
  int points_per_axis = 0;  ///< 0 selects a default per dimension
  int threads = 1;
};

/// (sum over components and |alpha| <= order of ||d^alpha u_i||_q^q)^(1/q);
/// for q = inf the maximum of the sup norms. Integrals are vertex sums over
/// a uniform grid spanning support_box().
double sobolev_norm(const AnalyticField& f, double q, const SobolevOptions& options = {});

/// Label of the multi-index/component combination used by sobolev_norm.
inline constexpr const char* kSobolevConvention =
    "lq-sum over components and multi-indices |alpha|<=3 (max for q=inf)";

}  // namespace nonlocal
