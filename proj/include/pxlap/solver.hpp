#pragma once

#include <array>
#include <string>
#include <utility>

#include "pxlap/energy.hpp"
#include "pxlap/manifolds.hpp"
#include "pxlap/problem.hpp"
#include "pxlap/sobolev.hpp"

namespace pxlap {

enum class RunStatus { converged, max_iters, threshold_exceeded, degenerate };
const char* to_string(RunStatus s);

enum class SignSignature { positive, negative, sign_changing };
const char* to_string(SignSignature s);

// Embedding constants estimated on the grid.  S is the Rayleigh infimum of
// ||grad u||_p / ||u||_q; the E constants bound ||u||_e <= E ||grad u||_p and
// carry a factor 2 of slack because the Rayleigh search only upper-bounds the
// discrete infimum.
struct EmbeddingConstants {
  double S = 0.0;
  double E_r = 0.0, E_s = 0.0, E_q = 0.0;
  bool warning = false;
};

EmbeddingConstants estimate_embeddings(const Problem& prob);
double estimate_sobolev_constant(const Problem& prob);

// Concentration gate (1/p+ - 1/q-_A) * S^N.  Infinite when the critical set
// is empty: the problem is subcritical and every energy level is compact.
struct ThresholdInfo {
  bool critical_empty = true;
  double q_inf_critical = 0.0;  // q^- over the critical set, 0 when empty
  double S = 0.0;
  double value = 0.0;           // +inf when critical_empty
  bool degenerate_gap = false;  // p+ == q-_A makes the gate 0
};

ThresholdInfo energy_threshold(const Problem& prob, double S);

// Palais-Smale residual surrogate: max of <phi_gradient(u), z> over tangent
// directions z with unit quadrature-weighted L2 norm, i.e. the weighted dual
// norm of the gradient minus its multiplier component.
double ps_residual(const Problem& prob, const ScalarField& u, ManifoldTag tag);

struct CriticalPoint {
  ScalarField field;
  EnergyBreakdown energy;
  double residual_norm = 0.0;
  std::pair<double, double> constraint_residuals{0.0, 0.0};
  SignSignature sign_signature = SignSignature::positive;
  int iterations = 0;
  RunStatus status = RunStatus::degenerate;
  std::string message;
};

CriticalPoint minimize_on_K(const Problem& prob, ManifoldTag tag,
                            const ThresholdInfo& threshold);

// Diagnostics at a manifold point: the Nehari identity in sign-split form,
// the energy sandwich, strict negativity of the radial pairings, and the
// gradient-norm lower bound with a concrete constant (see lower_bound_c).
struct LemmaAudit {
  double nehari_lhs = 0.0, nehari_rhs = 0.0, nehari_slack = 0.0;
  bool identity_ok = false;
  double sandwich_lower = 0.0, sandwich_upper = 0.0;  // bounds on Phi
  double energy_total = 0.0;
  bool sandwich_ok = false;
  double pairing1 = 0.0, pairing2 = 0.0;  // NaN when the tag leaves one inactive
  bool pairing_ok = false;
  double grad_norm_pos = 0.0, grad_norm_neg = 0.0;
  double lower_bound_c = 0.0;
  bool lower_bound_ok = false;
  bool pass = false;
};

LemmaAudit lemma_audit(const Problem& prob, const ScalarField& u, ManifoldTag tag,
                       const EmbeddingConstants& emb);

// The gradient-norm floor: any manifold point with all embedding arguments
// below 1 satisfies ||grad part||_p >= c where c solves
//   c^{p+} = (E_q c)^{q-} + lambda*c4*((E_r c)^{r-} + (E_s c)^{s-}).
double gradient_lower_bound(const Problem& prob, const EmbeddingConstants& emb);

struct ThreeSolutions {
  CriticalPoint k1, k2, k3;
  std::array<LemmaAudit, 3> audits;
  ThresholdInfo threshold;
  EmbeddingConstants embeddings;
  F2Report f2;
  double min_pairwise_distance = 0.0;  // Luxemburg q-norm of differences
  bool distinct = false;
  bool ok = false;
  double seconds = 0.0;
};

// The three constrained runs, concurrent when the problem allows it.
// Preconditions: validate(prob) passed and verify_F2 holds; the F2 report is
// part of the result either way.
ThreeSolutions solve_three(const Problem& prob);

}  // namespace pxlap
