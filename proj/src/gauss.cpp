#include "gauss.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace nonlocal {
namespace {

// Monic three-term recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
struct Recurrence {
  std::vector<double> a;
  std::vector<double> b;  // b[0] unused
  double mu0 = 0.0;       // total mass of the weight
};

// Jacobi weight x^beta on [0, 1].
Recurrence shifted_jacobi(int m, double beta) {
  Recurrence rec;
  rec.a.resize(m);
  rec.b.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + beta;
    const double ak = (k == 0) ? beta / (beta + 2.0) : beta * beta / (s * (s + 2.0));
    rec.a[k] = 0.5 * (1.0 + ak);
    if (k > 0) {
      const double bk = 4.0 * k * k * (k + beta) * (k + beta) / (s * s * (s + 1.0) * (s - 1.0));
      rec.b[k] = 0.25 * bk;
    }
  }
  rec.mu0 = 1.0 / (beta + 1.0);
  return rec;
}

// Legendre weight on [-1, 1].
Recurrence legendre(int m) {
  Recurrence rec;
  rec.a.assign(m, 0.0);
  rec.b.assign(m, 0.0);
  for (int k = 1; k < m; ++k) rec.b[k] = double(k) * k / (4.0 * k * k - 1.0);
  rec.mu0 = 2.0;
  return rec;
}

// Golub-Welsch with the last diagonal entry replaced by `last_diagonal`.
GaussRule golub_welsch(const Recurrence& rec, double last_diagonal) {
  const int m = static_cast<int>(rec.a.size());
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) diag[k] = rec.a[k];
  diag[m - 1] = last_diagonal;
  for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(rec.b[k]);

  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  if (m == 1) {
    rule.nodes[0] = diag[0];
    rule.weights[0] = rec.mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  for (int k = 0; k < m; ++k) {
    rule.nodes[k] = solver.eigenvalues()[k];
    const double v = solver.eigenvectors()(0, k);
    rule.weights[k] = rec.mu0 * v * v;
  }
  return rule;
}

// Last diagonal entry that places a node at x0 (Gauss-Radau modification).
double radau_diagonal(const Recurrence& rec, double x0) {
  const int m = static_cast<int>(rec.a.size());
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < m - 1; ++k) {
    const double next = (x0 - rec.a[k]) * cur - (k > 0 ? rec.b[k] * prev : 0.0);
    prev = cur;
    cur = next;
  }
  return x0 - rec.b[m - 1] * prev / cur;
}

}  // namespace

GaussRule gauss_legendre(int m) {
  require(m >= 1, "Gauss-Legendre order must be >= 1");
  Recurrence rec = legendre(m);
  GaussRule rule = golub_welsch(rec, rec.a[m - 1]);
  // Symmetrize to remove eigen-solver roundoff.
  for (int k = 0; k < m / 2; ++k) {
    const int j = m - 1 - k;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[k]);
    const double w = 0.5 * (rule.weights[j] + rule.weights[k]);
    rule.nodes[k] = -x;
    rule.nodes[j] = x;
    rule.weights[k] = rule.weights[j] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

GaussRule gauss_jacobi_unit(int m, double beta) {
  require(m >= 1, "Gauss-Jacobi order must be >= 1");
  require(beta > -1.0, "Gauss-Jacobi exponent must exceed -1");
  Recurrence rec = shifted_jacobi(m, beta);
  return golub_welsch(rec, rec.a[m - 1]);
}

GaussRule singular_radial_rule(int n, double p, int m) {
  check_dimension(n);
  require(m >= 1, "radial order must be >= 1");
  require(p > 0.0 && p < n, "radial rule needs 0 < p < n");

  const double gamma = n - 1.0 - p;
  const Recurrence rec = shifted_jacobi(m, gamma);
  const double target = 1.0 / n;

  // Error of the rule on the Lebesgue density rho^(n-1) = rho^gamma * rho^p.
  auto lebesgue_error = [&](const GaussRule& r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(std::max(r.nodes[i], 0.0), p);
    return sum - target;
  };

  double t = rec.a[m - 1];
  const bool integer_p = std::abs(p - std::round(p)) < 1e-14 && std::round(p) <= 2.0 * m - 2.0;
  if (!integer_p) {
    double lo = radau_diagonal(rec, 0.0);
    double hi = radau_diagonal(rec, 1.0);
    if (lo > hi) std::swap(lo, hi);
    double e_lo = lebesgue_error(golub_welsch(rec, lo));
    const double e_hi = lebesgue_error(golub_welsch(rec, hi));
    if ((e_lo < 0.0) != (e_hi < 0.0)) {
      for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double e_mid = lebesgue_error(golub_welsch(rec, mid));
        if (e_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((e_mid < 0.0) == (e_lo < 0.0)) {
          lo = mid;
          e_lo = e_mid;
        } else {
          hi = mid;
        }
      }
      t = 0.5 * (lo + hi);
    }
  }

  GaussRule jacobi = golub_welsch(rec, t);
  GaussRule rule;
  rule.nodes = jacobi.nodes;
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) rule.weights[i] = jacobi.weights[i] * std::pow(jacobi.nodes[i], p);
  return rule;
}

}  // namespace nonlocal
