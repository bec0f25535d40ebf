#include "pxlap/manifolds.hpp"

#include <cmath>
#include <vector>

#include "pxlap/modular.hpp"

namespace pxlap {

namespace {

// Sign adapter: the negative branch reuses the positive-branch formulas on
// the reflected variable with the reflected law  f~(a) = -f(x,-a).
struct SignLaw {
  const Nonlinearity& nl;
  int sign;
  double f(int node, double a) const {
    return sign > 0 ? f_eval(nl, node, a) : -f_eval(nl, node, -a);
  }
  double fu(int node, double a) const {
    return sign > 0 ? f_u_eval(nl, node, a) : f_u_eval(nl, node, -a);
  }
};

// Precomputed samples of one fibering profile, so the scalar constraint
// g(t) = phi_sign(t * w) can be swept cheaply.
struct FiberProfile {
  std::vector<double> gv, gw, gp;   // corner |grad w|, weight, exponent
  std::vector<double> nv, nw, nq;   // node value, weight, exponent
  std::vector<int> nidx;
  const Problem* prob;
  SignLaw law;

  FiberProfile(const Problem& p, const ScalarField& w, int sign)
      : prob(&p), law{p.nl, sign} {
    const Discretization& disc = *p.disc;
    for (const Corner& c : disc.corners()) {
      double gx, gy;
      disc.corner_gradient(w, c, gx, gy);
      const double g = std::sqrt(gx * gx + gy * gy);
      if (g != 0.0) {
        gv.push_back(g);
        gw.push_back(c.weight);
        gp.push_back(p.p[c.node]);
      }
    }
    for (int i = 0; i < w.size(); ++i) {
      if (w.values[i] > 0.0) {
        nv.push_back(w.values[i]);
        nw.push_back(disc.node_weight(i));
        nq.push_back(p.q[i]);
        nidx.push_back(i);
      }
    }
  }

  double eval(double t) const {
    double grad = 0.0;
    for (size_t k = 0; k < gv.size(); ++k) grad += gw[k] * std::pow(t * gv[k], gp[k]);
    double crit = 0.0, pert = 0.0;
    for (size_t k = 0; k < nv.size(); ++k) {
      const double a = t * nv[k];
      crit += nw[k] * std::pow(a, nq[k]);
      pert += nw[k] * law.f(nidx[k], a) * a;
    }
    return grad - crit - prob->lambda * pert;
  }
};

FiberResult solve_fiber(const Problem& prob, const FiberProfile& profile,
                        const FiberCoefficients& fc, double hint) {
  FiberResult res;
  res.scale = std::max(fc.A, fc.B);
  const double tol = prob.tol.fibering * res.scale;

  int evals = 0;
  auto g = [&](double t) {
    ++evals;
    return profile.eval(t);
  };

  double hi = fiber_bracket_seed(prob, fc);
  double ghi = g(hi);
  for (int d = 0; d < 60 && ghi >= 0.0; ++d) {
    hi *= 2.0;
    ghi = g(hi);
  }
  if (ghi >= 0.0) throw FiberingFailure("fibering constraint never turns negative");

  // Smallest root: find the first sign change sweeping up from zero.
  double lo = 0.0, glo = 0.0;
  bool bracketed = false;
  if (hint > 0.0) {
    const double a = std::max(hint / 8.0, hi * 1e-14), b = std::min(hint * 8.0, hi);
    if (a < b) {
      const double ga = g(a);
      const double gb = b == hi ? ghi : g(b);
      if (ga > 0.0 && gb < 0.0) {
        lo = a;
        glo = ga;
        hi = b;
        ghi = gb;
        bracketed = true;
      }
    }
  }
  if (!bracketed) {
    const int sweep = 16;
    double prev = hi * 1e-10;
    double gprev = g(prev);
    for (int d = 0; d < 6 && gprev <= 0.0; ++d) {
      prev *= 1e-3;
      gprev = g(prev);
    }
    if (gprev <= 0.0) throw FiberingFailure("fibering constraint not positive near zero");
    const double ratio = std::pow(hi / prev, 1.0 / sweep);
    for (int k = 1; k <= sweep; ++k) {
      const double t = k == sweep ? hi : prev * std::pow(ratio, k);
      const double gt = k == sweep ? ghi : g(t);
      if (gt < 0.0) {
        lo = prev;
        glo = gprev;
        hi = t;
        ghi = gt;
        break;
      }
      prev = t;
      gprev = gt;
    }
  }

  // Illinois false position: halving the retained endpoint's value keeps the
  // bracket contracting even when one side is far steeper than the other.
  double t = hi, gt = ghi;
  int side = 0;
  for (int it = 0; it < 120 && std::fabs(gt) > tol; ++it) {
    double cand = (lo * ghi - hi * glo) / (ghi - glo);
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    const double gc = g(cand);
    if (std::fabs(gc) < std::fabs(gt)) {
      t = cand;
      gt = gc;
    }
    if (gc > 0.0) {
      if (side > 0) ghi *= 0.5;
      lo = cand;
      glo = gc;
      side = 1;
    } else {
      if (side < 0) glo *= 0.5;
      hi = cand;
      ghi = gc;
      side = -1;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  if (std::fabs(gt) > tol)
    throw FiberingFailure("fibering root residual above tolerance");

  res.t = t;
  res.residual = gt;
  res.evaluations = evals;
  return res;
}

bool nonnegative(const ScalarField& u) {
  for (double v : u.values)
    if (v < 0.0) return false;
  return true;
}

bool nonpositive(const ScalarField& u) {
  for (double v : u.values)
    if (v > 0.0) return false;
  return true;
}

}  // namespace

std::pair<ScalarField, ScalarField> sign_split(const ScalarField& u) {
  return {positive_part(u), negative_part(u)};
}

FiberCoefficients fiber_coefficients(const Problem& prob, const ScalarField& w) {
  const Discretization& disc = *prob.disc;
  return {gradient_modular(disc, w, prob.p), modular(disc, w, prob.q),
          modular(disc, w, prob.nl.r)};
}

double fiber_bracket_seed(const Problem& prob, const FiberCoefficients& fc) {
  const double x = fc.A / (prob.nl.c3 * prob.lambda * fc.C);
  const double e1 = 1.0 / (prob.nl.r.sup() - prob.p.inf());
  const double e2 = 1.0 / (prob.nl.r.inf() - prob.p.sup());
  return std::max(std::pow(x, e1), std::pow(x, e2));
}

FiberResult fibering_root(const Problem& prob, const ScalarField& w0, double hint) {
  const bool pos = nonnegative(w0);
  const bool neg = nonpositive(w0);
  if (pos == neg) {
    // both => zero field, neither => mixed signs
    throw FiberingFailure("fibering needs a nonzero one-signed profile");
  }
  const ScalarField profile_field = pos ? w0 : negative_part(w0);
  FiberProfile profile(prob, profile_field, pos ? +1 : -1);
  if (profile.nv.empty()) throw FiberingFailure("fibering needs a nonzero profile");
  return solve_fiber(prob, profile, fiber_coefficients(prob, profile_field), hint);
}

M3Projection project_to_M3(const Problem& prob, const ScalarField& w0, const ScalarField& w1) {
  require_same_grid(w0, w1);
  if (!nonnegative(w0) || !nonpositive(w1))
    throw std::invalid_argument("M3 projection needs w0 >= 0 and w1 <= 0");
  for (int i = 0; i < w0.size(); ++i)
    if (w0.values[i] != 0.0 && w1.values[i] != 0.0)
      throw std::invalid_argument("M3 profiles must have nodewise disjoint supports");

  M3Projection proj{0.0, 0.0, ScalarField(w0.grid), {}, {}};
  proj.pos = fibering_root(prob, w0);
  proj.neg = fibering_root(prob, w1);
  proj.t_pos = proj.pos.t;
  proj.t_neg = proj.neg.t;
  for (int i = 0; i < w0.size(); ++i)
    proj.u.values[i] = proj.t_pos * w0.values[i] + proj.t_neg * w1.values[i];
  return proj;
}

MembershipCheck membership(const Problem& prob, const ScalarField& u, ManifoldTag tag,
                           double rel_tol) {
  if (rel_tol <= 0.0) rel_tol = prob.tol.constraint;
  const Discretization& disc = *prob.disc;
  auto [up, um] = sign_split(u);
  MembershipCheck chk;
  auto [p1, p2] = constraint_values(prob, u);
  chk.phi1 = p1;
  chk.phi2 = p2;
  chk.scale1 = std::max(gradient_modular(disc, up, prob.p), modular(disc, up, prob.q));
  chk.scale2 = std::max(gradient_modular(disc, um, prob.p), modular(disc, um, prob.q));
  chk.mass_pos = disc.integrate(up);
  chk.mass_neg = disc.integrate(um);

  const bool c1 = chk.mass_pos > 0.0 && std::fabs(chk.phi1) <= rel_tol * chk.scale1;
  const bool c2 = chk.mass_neg > 0.0 && std::fabs(chk.phi2) <= rel_tol * chk.scale2;
  switch (tag) {
    case ManifoldTag::K1:
      chk.sign_ok = nonnegative(u);
      chk.ok = chk.sign_ok && c1;
      break;
    case ManifoldTag::K2:
      chk.sign_ok = nonpositive(u);
      chk.ok = chk.sign_ok && c2;
      break;
    case ManifoldTag::K3:
      chk.sign_ok = true;
      chk.ok = c1 && c2;
      break;
  }
  return chk;
}

ScalarField constraint_gradient(const Problem& prob, const ScalarField& u, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("constraint index must be 1 or 2");
  const int sign = which == 1 ? +1 : -1;
  const Discretization& disc = *prob.disc;
  const SignLaw law{prob.nl, sign};

  // Work on the reflected field so both branches run the same arithmetic.
  ScalarField v = u;
  if (sign < 0)
    for (double& x : v.values) x = -x;
  ScalarField part = positive_part(v);

  ScalarField grad(prob.grid, false);
  for (const Corner& c : disc.corners()) {
    double gx, gy;
    disc.corner_gradient(part, c, gx, gy);
    const double g2 = gx * gx + gy * gy;
    if (g2 == 0.0) continue;
    const double pe = prob.p[c.node];
    const double coef = c.weight * pe * std::pow(g2, 0.5 * pe - 1.0);
    const double mx = coef * gx * disc.inv_spacing(0);
    grad.values[c.x1] += mx;
    grad.values[c.x0] -= mx;
    if (disc.grid().dimension() == 2) {
      const double my = coef * gy * disc.inv_spacing(1);
      grad.values[c.y1] += my;
      grad.values[c.y0] -= my;
    }
  }
  for (int i = 0; i < v.size(); ++i) {
    if (prob.grid->is_boundary(i)) {
      grad.values[i] = 0.0;
      continue;
    }
    const double a = part.values[i];
    const double w = disc.node_weight(i);
    if (a > 0.0) {
      grad.values[i] -= w * prob.q[i] * std::pow(a, prob.q[i] - 1.0);
      grad.values[i] -= prob.lambda * w * (law.fu(i, a) * a + law.f(i, a));
    } else {
      grad.values[i] = 0.0;
    }
  }
  // d phi2 / du = -(d phi~1 / du~) by the chain rule through u~ = -u.
  if (sign < 0)
    for (double& x : grad.values) x = -x;
  return grad;
}

double constraint_gradient_pairing(const Problem& prob, const ScalarField& u, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("constraint index must be 1 or 2");
  const int sign = which == 1 ? +1 : -1;
  const Discretization& disc = *prob.disc;
  const SignLaw law{prob.nl, sign};
  const ScalarField part = sign > 0 ? positive_part(u) : negative_part(u);

  double grad = 0.0;
  for (const Corner& c : disc.corners()) {
    double gx, gy;
    disc.corner_gradient(part, c, gx, gy);
    const double g2 = gx * gx + gy * gy;
    if (g2 != 0.0) grad += c.weight * prob.p[c.node] * std::pow(g2, 0.5 * prob.p[c.node]);
  }
  double crit = 0.0, pert = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double a = part.values[i];
    if (a <= 0.0) continue;
    const double w = disc.node_weight(i);
    crit += w * prob.q[i] * std::pow(a, prob.q[i]);
    pert += w * (law.f(i, a) * a + law.fu(i, a) * a * a);
  }
  return grad - crit - prob.lambda * pert;
}

ScalarField tangent_project(const Problem& prob, const ScalarField& u, const ScalarField& v,
                            ManifoldTag tag) {
  require_same_grid(u, v);
  ScalarField out = v;
  const bool use1 = tag != ManifoldTag::K2;
  const bool use2 = tag != ManifoldTag::K1;
  for (int which = 1; which <= 2; ++which) {
    if ((which == 1 && !use1) || (which == 2 && !use2)) continue;
    const ScalarField n = constraint_gradient(prob, u, which);
    // radial direction of the sign part: u+ for phi1, -u- for phi2
    ScalarField d = which == 1 ? positive_part(u) : negative_part(u);
    if (which == 2)
      for (double& x : d.values) x = -x;
    const double den = dot(n, d);
    const double scale = std::max({std::fabs(constraint_gradient_pairing(prob, u, which)),
                                   n.max_abs() * d.max_abs(), 1e-300});
    if (std::fabs(den) <= 1e-14 * scale)
      throw ManifoldDegeneracy("radial pairing of the constraint gradient degenerated");
    const double alpha = dot(n, out) / den;
    for (int i = 0; i < out.size(); ++i) out.values[i] -= alpha * d.values[i];
  }
  return out;
}

}  // namespace pxlap
