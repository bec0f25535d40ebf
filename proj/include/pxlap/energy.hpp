#pragma once

#include <array>
#include <utility>

#include "pxlap/problem.hpp"

namespace pxlap {

struct EnergyBreakdown {
  double dirichlet = 0.0;     // int (1/p) |grad v|^p   (regularized)
  double critical = 0.0;      // int (1/q) |v|^q
  double perturbation = 0.0;  // lambda int F(x,v)
  double total = 0.0;         // dirichlet - critical - perturbation
};

// Energy Phi(v) with its three terms; total is the exact difference of the
// reported terms.
EnergyBreakdown phi(const Problem& prob, const ScalarField& v);

// Exact nodal gradient of phi: the p-Laplacian flux adjoint minus the lumped
// mass of |v|^{q-2} v + lambda f(x,v).  Zero on boundary rows; pairs with
// nodal directions through the plain dot product.
ScalarField phi_gradient(const Problem& prob, const ScalarField& v);

// Exact action of the second derivative of phi at u on a direction z: the
// regularized flux Hessian (positive definite for p > 1) minus the lumped
// mass of (q-1)|u|^{q-2} + lambda f_u(x,u).  Zero on boundary rows.
ScalarField phi_hessian_action(const Problem& prob, const ScalarField& u,
                               const ScalarField& z);

// J(v) = int |grad v|^p - int |v|^q, both with their natural quadratures.
double J(const Problem& prob, const ScalarField& v);

// Nehari constraint residuals
//   phi1(u) = int |grad u+|^p - |u+|^q - lambda f(x,u) u+
//   phi2(u) = int |grad u-|^p - |u-|^q + lambda f(x,u) u-
// so that u in M1 iff phi1 = 0 (and symmetrically for M2).
std::pair<double, double> constraint_values(const Problem& prob, const ScalarField& u);

// Randomized verification of the (F2) growth chain on fields with nodal
// values uniform in [-1,1].  Slack entries are min over samples of
// (rhs - lhs) / scale per inequality; negative slack counts as a violation.
struct F2Report {
  int samples = 0;
  std::array<int, 4> violations{};
  std::array<double, 4> worst_slack{};
  bool pass = false;
};

F2Report verify_F2(const Discretization& disc, const Nonlinearity& nl,
                   const ExponentField& p, const ExponentField& q, int samples,
                   std::uint64_t rng_seed);

}  // namespace pxlap
