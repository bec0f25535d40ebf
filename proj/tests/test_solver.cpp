#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "pxlap/solver.hpp"

using namespace pxlap;

namespace {

double wnorm(const Discretization& disc, const ScalarField& z) {
  double s = 0.0;
  for (int i = 0; i < z.size(); ++i) s += disc.node_weight(i) * z.values[i] * z.values[i];
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("rayleigh quotient recovers the first dirichlet eigenvalue") {
  // at p = e = 2 on (0,1) the infimum of ||u'||_2 / ||u||_2 is pi
  GridPtr g = Grid::line(1.0, 65);
  Discretization disc(g);
  ExponentField two = ExponentField::constant(g, 2.0);
  const RayleighEstimate est = rayleigh_minimum(disc, two, two, 6, 300, 3);
  CHECK(est.value == doctest::Approx(std::acos(-1.0)).epsilon(0.02));
  CHECK(est.iterations > 0);

  GridPtr gf = Grid::line(1.0, 129);
  Discretization discf(gf);
  ExponentField twof = ExponentField::constant(gf, 2.0);
  const RayleighEstimate fine = rayleigh_minimum(discf, twof, twof, 6, 300, 3);
  CHECK(fine.value == doctest::Approx(std::acos(-1.0)).epsilon(0.02));
}

TEST_CASE("energy threshold arithmetic on a critical instance") {
  Problem prob = testing::rect_problem(9);
  const ThresholdInfo info = energy_threshold(prob, 2.0);
  CHECK_FALSE(info.critical_empty);
  CHECK(info.q_inf_critical == 6.0);
  CHECK(info.S == 2.0);
  CHECK_FALSE(info.degenerate_gap);
  CHECK(info.value == doctest::Approx((1.0 / 1.5 - 1.0 / 6.0) * 4.0).epsilon(1e-14));
}

TEST_CASE("energy threshold is infinite without a critical set") {
  Problem line = testing::line_problem(33);
  const ThresholdInfo a = energy_threshold(line, 2.0);
  CHECK(a.critical_empty);
  CHECK(std::isinf(a.value));

  GridPtr g = Grid::rectangle(1.0, 1.0, 9, 9);
  ExponentField p = ExponentField::constant(g, 1.5);
  ExponentField q = ExponentField::constant(g, 5.5);  // p* = 6 everywhere
  Nonlinearity nl = Nonlinearity::example(ExponentField::constant(g, 4.0),
                                          ExponentField::constant(g, 3.0), p.sup(), true);
  Problem sub = Problem::make(g, p, q, nl, 10.0);
  const ThresholdInfo b = energy_threshold(sub, 2.0);
  CHECK(b.critical_empty);
  CHECK(std::isinf(b.value));
}

TEST_CASE("constrained minimization converges on K1") {
  Problem prob = testing::line_problem(65, 5.0);
  const ThresholdInfo threshold = energy_threshold(prob, 1.0);
  const CriticalPoint cp = minimize_on_K(prob, ManifoldTag::K1, threshold);
  CHECK(cp.status == RunStatus::converged);
  CHECK(cp.residual_norm <= prob.tol.residual);
  CHECK(cp.sign_signature == SignSignature::positive);
  CHECK(cp.iterations > 0);
  CHECK(membership(prob, cp.field, ManifoldTag::K1).ok);
  CHECK(ps_residual(prob, cp.field, ManifoldTag::K1) <= prob.tol.residual * (1.0 + 1e-9));
  CHECK(std::isfinite(cp.energy.total));
}

TEST_CASE("weak form residual is small in every tangent direction") {
  Problem prob = testing::line_problem(65, 5.0);
  const ThresholdInfo threshold = energy_threshold(prob, 1.0);
  const CriticalPoint cp = minimize_on_K(prob, ManifoldTag::K1, threshold);
  REQUIRE(cp.status == RunStatus::converged);

  const ScalarField g = phi_gradient(prob, cp.field);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    ScalarField z = testing::random_field(prob.grid, rng);
    const ScalarField zt = tangent_project(prob, cp.field, z, ManifoldTag::K1);
    const double nz = wnorm(*prob.disc, zt);
    REQUIRE(nz > 0.0);
    CHECK(std::fabs(dot(g, zt)) <= 10.0 * prob.tol.residual * nz);
  }
}

TEST_CASE("negative branch mirrors the positive one for odd laws") {
  Problem prob = testing::line_problem(65, 5.0, false);
  prob.seed_neg = prob.seed_pos;
  prob.seed_neg *= -1.0;
  const ThresholdInfo threshold = energy_threshold(prob, 1.0);
  const CriticalPoint k1 = minimize_on_K(prob, ManifoldTag::K1, threshold);
  const CriticalPoint k2 = minimize_on_K(prob, ManifoldTag::K2, threshold);
  REQUIRE(k1.status == RunStatus::converged);
  REQUIRE(k2.status == RunStatus::converged);
  CHECK(k2.sign_signature == SignSignature::negative);
  CHECK(k2.energy.total == doctest::Approx(k1.energy.total).epsilon(1e-7));
  for (int i = 0; i < k1.field.size(); ++i)
    CHECK(k2.field.values[i] ==
          doctest::Approx(-k1.field.values[i]).epsilon(1e-7).scale(k1.field.max_abs()));
}

TEST_CASE("solve_three finds three sign-distinct critical points") {
  Problem prob = testing::line_problem(65, 5.0);
  const ThreeSolutions sol = solve_three(prob);

  CHECK(sol.k1.status == RunStatus::converged);
  CHECK(sol.k2.status == RunStatus::converged);
  CHECK(sol.k3.status == RunStatus::converged);
  CHECK(sol.k1.sign_signature == SignSignature::positive);
  CHECK(sol.k2.sign_signature == SignSignature::negative);
  CHECK(sol.k3.sign_signature == SignSignature::sign_changing);
  for (const CriticalPoint* cp : {&sol.k1, &sol.k2, &sol.k3})
    CHECK(cp->residual_norm <= prob.tol.residual);

  CHECK(positive_part(sol.k3.field).max_abs() > 0.0);
  CHECK(negative_part(sol.k3.field).max_abs() > 0.0);

  for (const LemmaAudit& audit : sol.audits) {
    CHECK(audit.identity_ok);
    CHECK(audit.sandwich_ok);
    CHECK(audit.pairing_ok);
    CHECK(audit.lower_bound_ok);
    CHECK(audit.pass);
  }

  CHECK(sol.f2.pass);
  CHECK(sol.distinct);
  CHECK(sol.min_pairwise_distance > 1e-5);
  CHECK(sol.threshold.critical_empty);  // 1d has no critical exponent
  CHECK(sol.ok);
  CHECK(sol.seconds > 0.0);
}

TEST_CASE("lemma audit flags an off-manifold field") {
  Problem prob = testing::line_problem(65, 5.0);
  const EmbeddingConstants emb = estimate_embeddings(prob);
  std::mt19937_64 rng(11);
  ScalarField u = testing::random_field(prob.grid, rng);
  const LemmaAudit audit = lemma_audit(prob, u, ManifoldTag::K1, emb);
  CHECK_FALSE(audit.identity_ok);
  CHECK_FALSE(audit.pass);
}

TEST_CASE("gradient lower bound is positive and below the solutions") {
  Problem prob = testing::line_problem(65, 5.0);
  const EmbeddingConstants emb = estimate_embeddings(prob);
  const double c = gradient_lower_bound(prob, emb);
  CHECK(c > 0.0);

  ScalarField u = prob.seed_pos;
  u *= fibering_root(prob, u).t;
  const LemmaAudit audit = lemma_audit(prob, u, ManifoldTag::K1, emb);
  CHECK(audit.lower_bound_c == doctest::Approx(c));
  CHECK(audit.grad_norm_pos >= c);
}

TEST_CASE("ground state energy decreases in lambda on K1") {
  double prev = std::numeric_limits<double>::infinity();
  for (double lam : {10.0, 100.0, 1000.0}) {
    Problem prob = testing::line_problem(65, lam);
    const ThresholdInfo threshold = energy_threshold(prob, 1.0);
    const CriticalPoint cp = minimize_on_K(prob, ManifoldTag::K1, threshold);
    REQUIRE(cp.status == RunStatus::converged);
    CHECK(cp.energy.total < prev);
    prev = cp.energy.total;
  }
}
