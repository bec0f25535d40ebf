#include "pxlap/energy.hpp"

#include <cmath>
#include <random>

#include "pxlap/modular.hpp"

namespace pxlap {

EnergyBreakdown phi(const Problem& prob, const ScalarField& v) {
  const Discretization& disc = *prob.disc;
  EnergyBreakdown e;
  e.dirichlet = disc.dirichlet_energy(v, prob.p, prob.tol.grad_regularization);
  double crit = 0.0, pert = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double w = disc.node_weight(i);
    const double a = std::fabs(v.values[i]);
    if (a != 0.0) {
      crit += w * std::pow(a, prob.q[i]) / prob.q[i];
      pert += w * F_eval(prob.nl, i, v.values[i]);
    }
  }
  e.critical = crit;
  e.perturbation = prob.lambda * pert;
  e.total = e.dirichlet - e.critical - e.perturbation;
  return e;
}

ScalarField phi_gradient(const Problem& prob, const ScalarField& v) {
  // Phi'(v) = A_p(v) - M(|v|^{q-2} v + lambda f(x,v)); the residual assembler
  // computes exactly this with the mass part passed as a load.
  ScalarField load(prob.grid, false);
  for (int i = 0; i < v.size(); ++i) {
    const double u = v.values[i];
    double m = 0.0;
    if (u != 0.0) m = std::pow(std::fabs(u), prob.q[i] - 2.0) * u + prob.lambda * f_eval(prob.nl, i, u);
    load.values[i] = m;
  }
  return prob.disc->p_laplacian_residual(v, prob.p, load, prob.tol.grad_regularization);
}

ScalarField phi_hessian_action(const Problem& prob, const ScalarField& u,
                               const ScalarField& z) {
  const Discretization& disc = *prob.disc;
  const Grid& grid = *prob.grid;
  const double e2 = prob.tol.grad_regularization * prob.tol.grad_regularization;
  const int dim = grid.dimension();
  ScalarField r(prob.grid, false);
  for (const Corner& c : disc.corners()) {
    double gx, gy, zx, zy;
    disc.corner_gradient(u, c, gx, gy);
    disc.corner_gradient(z, c, zx, zy);
    const double pe = prob.p[c.node];
    const double base = gx * gx + gy * gy + e2;
    const double c1 = c.weight * std::pow(base, 0.5 * pe - 1.0);
    const double c2 = c.weight * (pe - 2.0) * std::pow(base, 0.5 * pe - 2.0) *
                      (gx * zx + gy * zy);
    const double hx = (c1 * zx + c2 * gx) * disc.inv_spacing(0);
    r.values[c.x1] += hx;
    r.values[c.x0] -= hx;
    if (dim == 2) {
      const double hy = (c1 * zy + c2 * gy) * disc.inv_spacing(1);
      r.values[c.y1] += hy;
      r.values[c.y0] -= hy;
    }
  }
  for (int i = 0; i < grid.node_count(); ++i) {
    if (grid.is_boundary(i)) {
      r.values[i] = 0.0;
      continue;
    }
    const double a = std::fabs(u.values[i]);
    double m = prob.lambda * f_u_eval(prob.nl, i, u.values[i]);
    if (a != 0.0) m += (prob.q[i] - 1.0) * std::pow(a, prob.q[i] - 2.0);
    r.values[i] -= disc.node_weight(i) * m * z.values[i];
  }
  return r;
}

double J(const Problem& prob, const ScalarField& v) {
  return gradient_modular(*prob.disc, v, prob.p) - modular(*prob.disc, v, prob.q);
}

namespace {

// phi1 on the positive part, phi2 on the negative part; the f-term is
// evaluated at the signed value so any plug-in law sees the true argument.
double constraint_one(const Problem& prob, const ScalarField& part, int sign) {
  const Discretization& disc = *prob.disc;
  double v = gradient_modular(disc, part, prob.p) - modular(disc, part, prob.q);
  double ft = 0.0;
  for (int i = 0; i < part.size(); ++i) {
    const double a = part.values[i];
    if (a > 0.0) ft += disc.node_weight(i) * f_eval(prob.nl, i, sign > 0 ? a : -a) * a;
  }
  // sign > 0: - lambda int f(x,u) u+ ;  sign < 0: + lambda int f(x,u) u-
  return v - static_cast<double>(sign) * prob.lambda * ft;
}

}  // namespace

std::pair<double, double> constraint_values(const Problem& prob, const ScalarField& u) {
  return {constraint_one(prob, positive_part(u), +1),
          constraint_one(prob, negative_part(u), -1)};
}

F2Report verify_F2(const Discretization& disc, const Nonlinearity& nl,
                   const ExponentField& p, const ExponentField& q, int samples,
                   std::uint64_t rng_seed) {
  (void)p;
  (void)q;
  F2Report rep;
  rep.samples = samples;
  rep.worst_slack.fill(std::numeric_limits<double>::infinity());
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const Grid& grid = disc.grid();

  ScalarField u(disc.grid_ptr(), true);
  for (int sample = 0; sample < samples; ++sample) {
    for (int i = 0; i < grid.node_count(); ++i) u.values[i] = unif(rng);
    u.enforce_mask();

    double rho_r = 0.0, intF = 0.0, fu = 0.0, fuu2 = 0.0;
    for (int i = 0; i < grid.node_count(); ++i) {
      const double w = disc.node_weight(i);
      const double val = u.values[i];
      if (val == 0.0) continue;
      rho_r += w * std::pow(std::fabs(val), nl.r[i]);
      intF += w * F_eval(nl, i, val);
      fu += w * f_eval(nl, i, val) * val;
      fuu2 += w * f_u_eval(nl, i, val) * val * val;
    }

    const double links[4][2] = {{nl.c3 * rho_r, nl.c2 * intF},
                                {nl.c2 * intF, fu},
                                {fu, nl.c1 * fuu2},
                                {nl.c1 * fuu2, nl.c4 * rho_r}};
    for (int k = 0; k < 4; ++k) {
      const double lhs = links[k][0], rhs = links[k][1];
      const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
      const double slack = (rhs - lhs) / scale;
      rep.worst_slack[k] = std::min(rep.worst_slack[k], slack);
      if (slack < 0.0) ++rep.violations[k];
    }
  }
  rep.pass = rep.violations[0] == 0 && rep.violations[1] == 0 && rep.violations[2] == 0 &&
             rep.violations[3] == 0;
  return rep;
}

}  // namespace pxlap
