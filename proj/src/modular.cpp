#include "pxlap/modular.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pxlap {

namespace {

// Generic Luxemburg root on a sampled point set (nodes or gradient corners):
// values v_k >= 0, weights w_k > 0, exponents e_k.  Solves
// sum_k w_k (v_k/s)^{e_k} = 1.
double luxemburg_root(const std::vector<double>& v, const std::vector<double>& w,
                      const std::vector<double>& e, double e_inf, double e_sup,
                      double rel_tol) {
  double rho = 0.0;
  for (size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0.0) rho += w[k] * std::pow(v[k], e[k]);
  if (rho == 0.0) return 0.0;

  auto modular_at = [&](double s) {
    double m = 0.0;
    for (size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0.0) m += w[k] * std::pow(v[k] / s, e[k]);
    return m;
  };

  // rho(u/s) is pinched between rho * s^{-e_inf} and rho * s^{-e_sup}
  // (in either order), which brackets the root by rho^{1/e}.
  double lo = std::min(std::pow(rho, 1.0 / e_inf), std::pow(rho, 1.0 / e_sup));
  double hi = std::max(std::pow(rho, 1.0 / e_inf), std::pow(rho, 1.0 / e_sup));
  double flo = modular_at(lo) - 1.0;
  double fhi = modular_at(hi) - 1.0;
  if (flo <= 0.0) return lo;
  if (fhi >= 0.0) return hi;

  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double f = modular_at(mid) - 1.0;
    if (f > 0.0) {
      lo = mid;
      flo = f;
    } else {
      hi = mid;
      fhi = f;
    }
  }

  // Two secant refinements, kept inside the bracket.
  double a = lo, fa = flo, b = hi, fb = fhi;
  for (int it = 0; it < 2 && fa != fb; ++it) {
    double s = a - fa * (b - a) / (fb - fa);
    if (!(s > lo && s < hi)) break;
    const double fs = modular_at(s) - 1.0;
    if (fs > 0.0) {
      a = s;
      fa = fs;
    } else {
      b = s;
      fb = fs;
    }
  }
  return 0.5 * (a + b);
}

void collect_nodal(const Discretization& disc, const ScalarField& u, const ExponentField& e,
                   std::vector<double>& v, std::vector<double>& w, std::vector<double>& ex) {
  if (u.grid.get() != disc.grid_ptr().get() || e.grid_ptr().get() != disc.grid_ptr().get())
    throw std::invalid_argument("field lives on a different grid");
  const int n = u.size();
  v.resize(n);
  w.resize(n);
  ex.resize(n);
  for (int i = 0; i < n; ++i) {
    v[i] = std::fabs(u.values[i]);
    w[i] = disc.node_weight(i);
    ex[i] = e[i];
  }
}

void collect_corner(const Discretization& disc, const ScalarField& u, const ExponentField& p,
                    std::vector<double>& v, std::vector<double>& w, std::vector<double>& ex) {
  if (u.grid.get() != disc.grid_ptr().get() || p.grid_ptr().get() != disc.grid_ptr().get())
    throw std::invalid_argument("field lives on a different grid");
  const auto& corners = disc.corners();
  v.resize(corners.size());
  w.resize(corners.size());
  ex.resize(corners.size());
  for (size_t k = 0; k < corners.size(); ++k) {
    double gx, gy;
    disc.corner_gradient(u, corners[k], gx, gy);
    v[k] = std::sqrt(gx * gx + gy * gy);
    w[k] = corners[k].weight;
    ex[k] = p[corners[k].node];
  }
}

}  // namespace

double modular(const Discretization& disc, const ScalarField& u, const ExponentField& e) {
  if (u.grid.get() != disc.grid_ptr().get() || e.grid_ptr().get() != disc.grid_ptr().get())
    throw std::invalid_argument("field lives on a different grid");
  double s = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double a = std::fabs(u.values[i]);
    if (a != 0.0) s += disc.node_weight(i) * std::pow(a, e[i]);
  }
  return s;
}

double gradient_modular(const Discretization& disc, const ScalarField& u,
                        const ExponentField& p) {
  if (u.grid.get() != disc.grid_ptr().get() || p.grid_ptr().get() != disc.grid_ptr().get())
    throw std::invalid_argument("field lives on a different grid");
  double s = 0.0;
  for (const Corner& c : disc.corners()) {
    double gx, gy;
    disc.corner_gradient(u, c, gx, gy);
    const double g2 = gx * gx + gy * gy;
    if (g2 != 0.0) s += c.weight * std::pow(g2, 0.5 * p[c.node]);
  }
  return s;
}

double luxemburg_norm(const Discretization& disc, const ScalarField& u,
                      const ExponentField& e, double rel_tol) {
  std::vector<double> v, w, ex;
  collect_nodal(disc, u, e, v, w, ex);
  return luxemburg_root(v, w, ex, e.inf(), e.sup(), rel_tol);
}

double gradient_luxemburg_norm(const Discretization& disc, const ScalarField& u,
                               const ExponentField& p, double rel_tol) {
  std::vector<double> v, w, ex;
  collect_corner(disc, u, p, v, w, ex);
  return luxemburg_root(v, w, ex, p.inf(), p.sup(), rel_tol);
}

HolderCheck holder_check(const Discretization& disc, const ScalarField& f,
                         const ScalarField& g, const ExponentField& p,
                         const ExponentField* conj) {
  require_same_grid(f, g);
  ExponentField q = conj ? *conj : conjugate_exponent(p);
  double lhs = 0.0;
  for (int i = 0; i < f.size(); ++i)
    lhs += disc.node_weight(i) * std::fabs(f.values[i] * g.values[i]);
  const double rhs = 2.0 * luxemburg_norm(disc, f, p) * luxemburg_norm(disc, g, q);
  return {lhs, rhs, lhs <= rhs};
}

double poincare_ratio(const Discretization& disc, const ScalarField& u,
                      const ExponentField& p) {
  const double grad = gradient_luxemburg_norm(disc, u, p);
  if (grad == 0.0) throw std::invalid_argument("poincare ratio needs a nonzero field");
  return luxemburg_norm(disc, u, p) / grad;
}

}  // namespace pxlap
