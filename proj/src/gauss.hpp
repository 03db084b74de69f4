#pragma once

#include <vector>

namespace nonlocal {

/// One-dimensional quadrature rule: sum_i weights[i] * f(nodes[i]).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int m);

/// m-point Gauss-Jacobi rule on [0, 1] for the weight x^beta, beta > -1.
GaussRule gauss_jacobi_unit(int m, double beta);

/// Radial rule on [0, 1] for the Lebesgue measure rho^(n-1) d rho of an
/// n-ball whose integrands carry a rho^(-p) singularity.
///
/// Nodes come from the quasi-Gauss family of the Jacobi weight rho^(n-1-p):
/// the last diagonal entry of the Jacobi matrix is chosen so that the rule
/// also integrates rho^(n-1) exactly. The result integrates
/// rho^(-p) * P(rho) rho^(n-1) exactly for deg P <= 2m-2, and the plain
/// measure exactly. All nodes lie in (0, 1); weights are positive.
/// When rho^(n-1) is already in the exact space (integer p <= 2m-2) this is
/// the Gauss-Jacobi rule.
GaussRule singular_radial_rule(int n, double p, int m);

}  // namespace nonlocal
