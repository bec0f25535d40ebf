#include "pxlap/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <utility>
#include <vector>

#include "pxlap/modular.hpp"

namespace pxlap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ConstraintPair {
  ScalarField n1, n2;
  bool use1 = false, use2 = false;
};

ConstraintPair active_constraints(const Problem& prob, const ScalarField& u, ManifoldTag tag) {
  ConstraintPair cp;
  cp.use1 = tag != ManifoldTag::K2;
  cp.use2 = tag != ManifoldTag::K1;
  if (cp.use1) cp.n1 = constraint_gradient(prob, u, 1);
  if (cp.use2) cp.n2 = constraint_gradient(prob, u, 2);
  return cp;
}

struct DualProjection {
  ScalarField pg;
  double norm2 = 0.0;
  double mu1 = 0.0, mu2 = 0.0;
};

// Multiplier components of g along the active constraint gradients in the
// metric diag(m).  The two gradients have disjoint node supports (each is
// masked to its own sign set), so the normal equations decouple.
DualProjection project_dual(const ScalarField& g, const ConstraintPair& cp,
                            const std::vector<double>& m) {
  DualProjection out;
  out.pg = g;
  auto mu_for = [&](const ScalarField& n) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n.size(); ++i) {
      num += n.values[i] * g.values[i] / m[i];
      den += n.values[i] * n.values[i] / m[i];
    }
    return den > 0.0 ? num / den : 0.0;
  };
  if (cp.use1) out.mu1 = mu_for(cp.n1);
  if (cp.use2) out.mu2 = mu_for(cp.n2);
  for (int i = 0; i < out.pg.size(); ++i) {
    if (cp.use1) out.pg.values[i] -= out.mu1 * cp.n1.values[i];
    if (cp.use2) out.pg.values[i] -= out.mu2 * cp.n2.values[i];
    out.norm2 += out.pg.values[i] * out.pg.values[i] / m[i];
  }
  return out;
}

// Diagonal of the regularized flux Hessian.  The p < 2 energy is stiff where
// the gradient nearly vanishes, with curvature up to eps^{p-2}; this diagonal
// preconditions the tangent CG solve.  Boundary rows are set to 1 (their
// gradient entries are zero anyway).
std::vector<double> jacobi_diag(const Problem& prob, const ScalarField& u) {
  const Discretization& disc = *prob.disc;
  std::vector<double> P(u.values.size(), 0.0);
  const double eps2 = prob.tol.grad_regularization * prob.tol.grad_regularization;
  const int dim = prob.grid->dimension();
  const double ihx2 = disc.inv_spacing(0) * disc.inv_spacing(0);
  const double ihy2 = dim == 2 ? disc.inv_spacing(1) * disc.inv_spacing(1) : 0.0;
  for (const Corner& c : disc.corners()) {
    double gx, gy;
    disc.corner_gradient(u, c, gx, gy);
    const double pe = prob.p[c.node];
    const double coef = c.weight * std::pow(gx * gx + gy * gy + eps2, 0.5 * pe - 1.0);
    P[c.x0] += coef * ihx2;
    P[c.x1] += coef * ihx2;
    if (dim == 2) {
      P[c.y0] += coef * ihy2;
      P[c.y1] += coef * ihy2;
    }
  }
  double pmax = 0.0;
  for (double v : P) pmax = std::max(pmax, v);
  const double floor = 1e-14 * pmax + 1e-300;
  for (size_t i = 0; i < P.size(); ++i)
    P[i] = prob.grid->is_boundary(static_cast<int>(i)) ? 1.0 : std::max(P[i], floor);
  return P;
}

// Euclidean projection onto the tangent of the active constraints.  The two
// constraint gradients have disjoint node supports, so dropping them one at a
// time is the joint projection.
void project_tangent(ScalarField& v, const ConstraintPair& cp) {
  auto drop = [&v](const ScalarField& n) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n.size(); ++i) {
      num += n.values[i] * v.values[i];
      den += n.values[i] * n.values[i];
    }
    if (den > 0.0) {
      const double mu = num / den;
      for (int i = 0; i < n.size(); ++i) v.values[i] -= mu * n.values[i];
    }
  };
  if (cp.use1) drop(cp.n1);
  if (cp.use2) drop(cp.n2);
}

double wnorm(const ScalarField& r, const std::vector<double>& w) {
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) s += r.values[i] * r.values[i] / w[i];
  return std::sqrt(s);
}

// Tangent Newton direction by preconditioned CG on the projected Hessian.
// Phi is not convex along the fiber directions, so CG exits on negative
// curvature with the progress made so far (first iterate falls back to the
// preconditioned steepest descent step).
ScalarField newton_direction(const Problem& prob, const ScalarField& u, const ScalarField& g,
                             const ConstraintPair& cp, const std::vector<double>& P) {
  const std::vector<double>& w = prob.disc->node_weights();
  ScalarField r = g;
  project_tangent(r, cp);
  const double r0 = wnorm(r, w);
  const double eta = std::clamp(std::sqrt(r0), 1e-4, 0.1);

  auto precondition = [&](const ScalarField& in) {
    ScalarField z(prob.grid);
    for (int i = 0; i < in.size(); ++i)
      z.values[i] = prob.grid->is_boundary(i) ? 0.0 : in.values[i] / P[i];
    project_tangent(z, cp);
    return z;
  };

  ScalarField d(prob.grid);
  ScalarField z = precondition(r);
  ScalarField dir = z;
  dir *= -1.0;
  double rz = dot(r, z);
  bool moved = false;
  for (int k = 0; k < 400 && rz > 0.0; ++k) {
    ScalarField q = phi_hessian_action(prob, u, dir);
    project_tangent(q, cp);
    const double curv = dot(dir, q);
    if (curv <= 1e-14 * dot(dir, dir)) {
      if (!moved) d = dir;
      break;
    }
    const double a = rz / curv;
    for (int i = 0; i < d.size(); ++i) {
      d.values[i] += a * dir.values[i];
      r.values[i] += a * q.values[i];
    }
    moved = true;
    if (wnorm(r, w) <= eta * r0) break;
    z = precondition(r);
    const double rz_new = dot(r, z);
    dir *= rz_new / rz;
    dir -= z;
    rz = rz_new;
  }
  if (!moved && d.max_abs() == 0.0) {
    d = precondition(g);
    d *= -1.0;
  }
  return d;
}

ScalarField clip_negative(const ScalarField& u) {
  ScalarField v = u;
  for (double& x : v.values) x = std::min(x, 0.0);
  return v;
}

// Puts a stepped iterate back on the manifold: rescale the active sign parts
// by their fibering roots.  Iterates stay close to the manifold, so roots
// after the initial projection sit near 1; hint = 0 forces the full sweep.
ScalarField reproject(const Problem& prob, ManifoldTag tag, const ScalarField& raw,
                      double hint) {
  if (tag == ManifoldTag::K1) {
    ScalarField w = positive_part(raw);
    if (w.max_abs() == 0.0) throw FiberingFailure("positive part vanished");
    w *= fibering_root(prob, w, hint).t;
    return w;
  }
  if (tag == ManifoldTag::K2) {
    ScalarField w = clip_negative(raw);
    if (w.max_abs() == 0.0) throw FiberingFailure("negative part vanished");
    w *= fibering_root(prob, w, hint).t;
    return w;
  }
  ScalarField wp = positive_part(raw);
  ScalarField wn = clip_negative(raw);
  if (wp.max_abs() == 0.0 || wn.max_abs() == 0.0)
    throw FiberingFailure("a sign part vanished during reprojection");
  const double tp = fibering_root(prob, wp, hint).t;
  const double tn = fibering_root(prob, wn, hint).t;
  for (int i = 0; i < wp.size(); ++i) wp.values[i] = tp * wp.values[i] + tn * wn.values[i];
  return wp;
}

SignSignature signature_of(const ScalarField& u) {
  bool pos = false, neg = false;
  for (double v : u.values) {
    pos = pos || v > 0.0;
    neg = neg || v < 0.0;
  }
  if (pos && neg) return SignSignature::sign_changing;
  return neg ? SignSignature::negative : SignSignature::positive;
}

double lux_distance(const Problem& prob, const ScalarField& a, const ScalarField& b) {
  ScalarField d = a;
  d -= b;
  return luxemburg_norm(*prob.disc, d, prob.q);
}

}  // namespace

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged: return "converged";
    case RunStatus::max_iters: return "max_iters";
    case RunStatus::threshold_exceeded: return "threshold_exceeded";
    case RunStatus::degenerate: return "degenerate";
  }
  return "unknown";
}

const char* to_string(SignSignature s) {
  switch (s) {
    case SignSignature::positive: return "positive";
    case SignSignature::negative: return "negative";
    case SignSignature::sign_changing: return "sign-changing";
  }
  return "unknown";
}

double estimate_sobolev_constant(const Problem& prob) {
  return rayleigh_minimum(*prob.disc, prob.p, prob.q, prob.sobolev_starts,
                          prob.sobolev_iterations, prob.rng_seed)
      .value;
}

EmbeddingConstants estimate_embeddings(const Problem& prob) {
  EmbeddingConstants emb;
  if (std::isfinite(prob.sobolev_constant) && prob.sobolev_constant > 0.0) {
    emb.S = prob.sobolev_constant;
  } else {
    RayleighEstimate est = rayleigh_minimum(*prob.disc, prob.p, prob.q, prob.sobolev_starts,
                                            prob.sobolev_iterations, prob.rng_seed);
    emb.S = est.value;
    emb.warning = est.warning;
  }
  emb.E_q = 2.0 / emb.S;
  RayleighEstimate er = rayleigh_minimum(*prob.disc, prob.p, prob.nl.r, prob.sobolev_starts,
                                         prob.sobolev_iterations, prob.rng_seed + 1);
  emb.E_r = 2.0 / er.value;
  emb.warning = emb.warning || er.warning;
  if (prob.nl.positive_part_term) {
    RayleighEstimate es = rayleigh_minimum(*prob.disc, prob.p, prob.nl.s, prob.sobolev_starts,
                                           prob.sobolev_iterations, prob.rng_seed + 2);
    emb.E_s = 2.0 / es.value;
    emb.warning = emb.warning || es.warning;
  }
  return emb;
}

ThresholdInfo energy_threshold(const Problem& prob, double S) {
  ThresholdInfo th;
  th.S = S;
  th.value = kInf;
  const int dim = prob.grid->dimension();
  if (prob.p.sup() >= dim) return th;  // no critical exponent, subcritical
  const CriticalSet cs = critical_set(prob.p, prob.q, prob.tol.critical_set);
  if (cs.empty()) return th;
  th.critical_empty = false;
  th.q_inf_critical = cs.q_inf;
  const double gap = 1.0 / prob.p.sup() - 1.0 / cs.q_inf;
  th.degenerate_gap = gap <= 1e-15;
  th.value = gap * std::pow(S, dim);
  return th;
}

double ps_residual(const Problem& prob, const ScalarField& u, ManifoldTag tag) {
  const ScalarField g = phi_gradient(prob, u);
  const ConstraintPair cp = active_constraints(prob, u, tag);
  return std::sqrt(project_dual(g, cp, prob.disc->node_weights()).norm2);
}

CriticalPoint minimize_on_K(const Problem& prob, ManifoldTag tag,
                            const ThresholdInfo& threshold) {
  CriticalPoint out;
  out.field = ScalarField(prob.grid);
  try {
    ScalarField raw(prob.grid);
    if (tag != ManifoldTag::K2) raw += prob.seed_pos;
    if (tag != ManifoldTag::K1) raw += prob.seed_neg;
    ScalarField u = reproject(prob, tag, raw, 0.0);
    double phi_u = phi(prob, u).total;

    RunStatus status = RunStatus::max_iters;
    int it = 0;
    for (; it < prob.max_iterations; ++it) {
      const ScalarField g = phi_gradient(prob, u);
      const ConstraintPair cp = active_constraints(prob, u, tag);
      out.residual_norm = std::sqrt(project_dual(g, cp, prob.disc->node_weights()).norm2);
      if (out.residual_norm <= prob.tol.residual) {
        status = RunStatus::converged;
        break;
      }
      const std::vector<double> P = jacobi_diag(prob, u);
      ScalarField dir = newton_direction(prob, u, g, cp, P);
      double slope = dot(g, dir);
      if (!(slope < 0.0)) {
        const DualProjection dp = project_dual(g, cp, P);
        for (int i = 0; i < dir.size(); ++i)
          dir.values[i] = prob.grid->is_boundary(i) ? 0.0 : -dp.pg.values[i] / P[i];
        slope = dot(g, dir);
      }

      // Sufficient decrease demanded only down to the rounding floor of the
      // energy sums; the final Newton steps sit below it.
      const double noise = 1e-13 * (1.0 + std::fabs(phi_u));
      double alpha = 1.0;
      bool accepted = false;
      for (int bt = 0; bt < 60 && !accepted; ++bt) {
        ScalarField cand_raw = u;
        for (int i = 0; i < cand_raw.size(); ++i) cand_raw.values[i] += alpha * dir.values[i];
        ScalarField cand;
        try {
          cand = reproject(prob, tag, cand_raw, 1.0);
        } catch (const FiberingFailure&) {
          alpha *= 0.5;
          continue;
        }
        const double phi_c = phi(prob, cand).total;
        if (phi_c <= phi_u + 1e-4 * alpha * slope + noise) {
          u = std::move(cand);
          phi_u = phi_c;
          accepted = true;
        } else {
          alpha *= 0.5;
        }
      }
      if (!accepted) {
        out.message = "line search stalled";
        break;
      }
    }

    out.field = u;
    out.energy = phi(prob, u);
    out.constraint_residuals = constraint_values(prob, u);
    out.sign_signature = signature_of(u);
    out.iterations = it;
    if (status == RunStatus::converged && std::isfinite(threshold.value) &&
        !(out.energy.total < threshold.value)) {
      status = RunStatus::threshold_exceeded;
      out.message = "energy sits above the concentration gate; raise lambda";
    }
    out.status = status;
  } catch (const std::exception& e) {
    out.status = RunStatus::degenerate;
    out.message = e.what();
  }
  return out;
}

double gradient_lower_bound(const Problem& prob, const EmbeddingConstants& emb) {
  struct Term {
    double a, e;
  };
  const double pp = prob.p.sup();
  std::vector<Term> terms;
  terms.push_back({std::pow(emb.E_q, prob.q.inf()), prob.q.inf() - pp});
  terms.push_back({prob.lambda * prob.nl.c4 * std::pow(emb.E_r, prob.nl.r.inf()),
                   prob.nl.r.inf() - pp});
  if (prob.nl.positive_part_term)
    terms.push_back({prob.lambda * prob.nl.c4 * std::pow(emb.E_s, prob.nl.s.inf()),
                     prob.nl.s.inf() - pp});
  auto h = [&](double c) {
    double v = 0.0;
    for (const Term& t : terms) v += t.a * std::pow(c, t.e);
    return v;  // increasing: every exponent is positive by the chain ordering
  };
  double root = 1.0;
  if (h(1.0) > 1.0) {
    double lo = 1e-300, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = std::sqrt(lo * hi);
      (h(mid) < 1.0 ? lo : hi) = mid;
    }
    root = lo;
  }
  double cap = 1.0;
  for (double e : {emb.E_q, emb.E_r, emb.E_s})
    if (e > 0.0) cap = std::min(cap, 1.0 / (2.0 * e));
  return std::min(root, cap);
}

LemmaAudit lemma_audit(const Problem& prob, const ScalarField& u, ManifoldTag tag,
                       const EmbeddingConstants& emb) {
  const Discretization& disc = *prob.disc;
  LemmaAudit a;
  auto [up, um] = sign_split(u);

  // Nehari identity in sign-split form; the split gradient modular is exactly
  // -(phi1 + phi2) + rhs, so the slack reflects only the fibering residuals.
  const double G = gradient_modular(disc, up, prob.p) + gradient_modular(disc, um, prob.p);
  double fu = 0.0;
  for (int i = 0; i < u.size(); ++i)
    fu += disc.node_weight(i) * f_eval(prob.nl, i, u.values[i]) * u.values[i];
  a.nehari_lhs = G;
  a.nehari_rhs = modular(disc, u, prob.q) + prob.lambda * fu;
  a.nehari_slack =
      std::fabs(a.nehari_lhs - a.nehari_rhs) / std::max({a.nehari_lhs, a.nehari_rhs, 1e-300});
  a.identity_ok = a.nehari_slack <= 1e-6;

  // Sandwich from termwise bounds: plain (unsplit) gradient modulars so both
  // sides hold for sign-changing fields too.
  double plain = 0.0, plain_reg = 0.0;
  const double eps2 = prob.tol.grad_regularization * prob.tol.grad_regularization;
  for (const Corner& c : disc.corners()) {
    double gx, gy;
    disc.corner_gradient(u, c, gx, gy);
    const double g2 = gx * gx + gy * gy;
    const double pe = prob.p[c.node];
    if (g2 > 0.0) plain += c.weight * std::pow(g2, 0.5 * pe);
    plain_reg += c.weight * std::pow(g2 + eps2, 0.5 * pe);
  }
  const EnergyBreakdown eb = phi(prob, u);
  a.energy_total = eb.total;
  a.sandwich_upper = plain_reg / prob.p.inf();
  a.sandwich_lower = plain / prob.p.sup() -
                     std::max(1.0 / prob.q.inf(), 1.0 / prob.nl.c2) * a.nehari_rhs;
  a.sandwich_ok = eb.total <= a.sandwich_upper * (1.0 + 1e-12) &&
                  eb.total >= a.sandwich_lower - 1e-12 * std::fabs(a.sandwich_lower);

  a.pairing1 = tag != ManifoldTag::K2 ? constraint_gradient_pairing(prob, u, 1) : kNaN;
  a.pairing2 = tag != ManifoldTag::K1 ? constraint_gradient_pairing(prob, u, 2) : kNaN;
  a.pairing_ok = (tag == ManifoldTag::K2 || a.pairing1 < 0.0) &&
                 (tag == ManifoldTag::K1 || a.pairing2 < 0.0);

  a.lower_bound_c = gradient_lower_bound(prob, emb);
  a.grad_norm_pos = tag != ManifoldTag::K2 ? gradient_luxemburg_norm(disc, up, prob.p) : 0.0;
  a.grad_norm_neg = tag != ManifoldTag::K1 ? gradient_luxemburg_norm(disc, um, prob.p) : 0.0;
  a.lower_bound_ok = (tag == ManifoldTag::K2 || a.grad_norm_pos >= a.lower_bound_c) &&
                     (tag == ManifoldTag::K1 || a.grad_norm_neg >= a.lower_bound_c);

  a.pass = a.identity_ok && a.sandwich_ok && a.pairing_ok && a.lower_bound_ok;
  return a;
}

ThreeSolutions solve_three(const Problem& prob) {
  const auto t0 = std::chrono::steady_clock::now();
  ThreeSolutions out;
  out.embeddings = estimate_embeddings(prob);
  out.threshold = energy_threshold(prob, out.embeddings.S);
  out.f2 = verify_F2(*prob.disc, prob.nl, prob.p, prob.q, prob.f2_samples, prob.rng_seed);

  if (prob.concurrent_runs) {
    auto f1 = std::async(std::launch::async,
                         [&] { return minimize_on_K(prob, ManifoldTag::K1, out.threshold); });
    auto f2r = std::async(std::launch::async,
                          [&] { return minimize_on_K(prob, ManifoldTag::K2, out.threshold); });
    out.k3 = minimize_on_K(prob, ManifoldTag::K3, out.threshold);
    out.k1 = f1.get();
    out.k2 = f2r.get();
  } else {
    out.k1 = minimize_on_K(prob, ManifoldTag::K1, out.threshold);
    out.k2 = minimize_on_K(prob, ManifoldTag::K2, out.threshold);
    out.k3 = minimize_on_K(prob, ManifoldTag::K3, out.threshold);
  }

  out.audits[0] = lemma_audit(prob, out.k1.field, ManifoldTag::K1, out.embeddings);
  out.audits[1] = lemma_audit(prob, out.k2.field, ManifoldTag::K2, out.embeddings);
  out.audits[2] = lemma_audit(prob, out.k3.field, ManifoldTag::K3, out.embeddings);

  const double d12 = lux_distance(prob, out.k1.field, out.k2.field);
  const double d13 = lux_distance(prob, out.k1.field, out.k3.field);
  const double d23 = lux_distance(prob, out.k2.field, out.k3.field);
  out.min_pairwise_distance = std::min({d12, d13, d23});
  out.distinct = out.min_pairwise_distance > 10.0 * prob.tol.residual;

  const bool converged = out.k1.status == RunStatus::converged &&
                         out.k2.status == RunStatus::converged &&
                         out.k3.status == RunStatus::converged;
  bool audits_pass = true;
  for (const LemmaAudit& a : out.audits) audits_pass = audits_pass && a.pass;
  out.ok = converged && out.distinct && out.f2.pass && audits_pass;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace pxlap
