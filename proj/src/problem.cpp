#include "pxlap/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pxlap {

ScalarField bump_field(GridPtr grid, double cx, double cy, double radius, double amplitude) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
  return ScalarField::from_function(grid, [=](double x, double y) {
    const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
    const double t = 1.0 - d2 / (radius * radius);
    return t > 0.0 ? amplitude * t * t : 0.0;
  });
}

Problem Problem::make(GridPtr grid, ExponentField p, ExponentField q, Nonlinearity nl,
                      double lambda) {
  Problem prob{grid,
               std::make_shared<Discretization>(grid),
               std::move(p),
               std::move(q),
               std::move(nl),
               lambda,
               Tolerances{},
               ScalarField{},
               ScalarField{}};
  const double lx = grid->extent(0);
  const double ly = grid->dimension() == 2 ? grid->extent(1) : 0.0;
  const double rad = 0.2 * (grid->dimension() == 2 ? std::min(lx, ly) : lx);
  prob.seed_pos = bump_field(grid, 0.25 * lx, 0.5 * ly, rad, 1.0);
  prob.seed_neg = bump_field(grid, 0.75 * lx, 0.5 * ly, rad, -1.0);
  return prob;
}

void validate(const Problem& prob) {
  std::ostringstream err;
  auto fail = [&err](const std::string& m) { err << "  - " << m << "\n"; };

  const double p_inf = prob.p.inf(), p_sup = prob.p.sup();
  const double q_inf = prob.q.inf(), q_sup = prob.q.sup();
  const double r_inf = prob.nl.r.inf(), r_sup = prob.nl.r.sup();
  const double s_inf = prob.nl.s.inf();

  if (!(p_inf > 1.0)) fail("p must satisfy p > 1");
  if (!(p_sup < r_inf)) fail("exponent chain needs p+ < r-");
  if (!(r_sup < q_inf)) fail("exponent chain needs r+ < q-");
  if (!(q_inf <= q_sup)) fail("q bounds inconsistent");
  if (!(r_inf > 2.0)) fail("perturbation exponent needs r > 2");
  if (!(s_inf > 2.0)) fail("perturbation exponent needs s > 2");
  if (!(s_inf > p_sup)) fail("perturbation exponent needs s- > p+");
  if (!(q_inf - 1.0 > s_inf)) fail("perturbation exponent needs s- < q- - 1");

  for (int i = 0; i < prob.p.size(); ++i) {
    if (prob.nl.s[i] >= prob.nl.r[i]) {
      fail("s < r must hold nodewise");
      break;
    }
  }
  for (int i = 0; i < prob.p.size(); ++i) {
    if (prob.nl.r[i] > prob.q[i]) {
      fail("r <= q must hold nodewise");
      break;
    }
  }

  if (prob.grid->dimension() == 2) {
    const double n = 2.0;
    if (!(p_sup < n)) {
      fail("p < N is required on 2-d grids");
    } else {
      for (int i = 0; i < prob.p.size(); ++i) {
        const double crit = n * prob.p[i] / (n - prob.p[i]);
        if (prob.q[i] > crit + prob.tol.critical_set) {
          fail("q <= p* must hold nodewise");
          break;
        }
      }
    }
  }

  if (!(prob.lambda > 0.0)) fail("lambda must be positive");
  if (!(prob.nl.c1 > 1.0 / (q_inf - 1.0))) fail("constant c1 must exceed 1/(q- - 1)");
  if (!(p_sup < prob.nl.c2 && prob.nl.c2 < q_inf)) fail("constant c2 must lie in (p+, q-)");
  if (!(0.0 < prob.nl.c3 && prob.nl.c3 < prob.nl.c4)) fail("constants need 0 < c3 < c4");
  if (prob.max_iterations < 1) fail("max_iterations must be positive");

  bool pos_ok = true, neg_ok = true;
  double pos_mass = 0.0, neg_mass = 0.0;
  if (prob.seed_pos.size() > 0)
    for (double v : prob.seed_pos.values) {
      if (v < 0.0) pos_ok = false;
      pos_mass += v;
    }
  if (prob.seed_neg.size() > 0)
    for (double v : prob.seed_neg.values) {
      if (v > 0.0) neg_ok = false;
      neg_mass += -v;
    }
  if (!pos_ok || pos_mass <= 0.0) fail("positive seed must be nonnegative and nonzero");
  if (!neg_ok || neg_mass <= 0.0) fail("negative seed must be nonpositive and nonzero");

  const std::string messages = err.str();
  if (!messages.empty())
    throw std::invalid_argument("invalid problem configuration:\n" + messages);
}

}  // namespace pxlap
