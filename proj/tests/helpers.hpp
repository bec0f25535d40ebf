#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pxlap/discretization.hpp"
#include "pxlap/exponent_field.hpp"
#include "pxlap/fields.hpp"
#include "pxlap/grid.hpp"
#include "pxlap/nonlinearity.hpp"
#include "pxlap/problem.hpp"

namespace pxlap::testing {

// Trapezoid weights rebuilt from scratch so modular oracles share no code
// with the library quadrature.
inline std::vector<double> oracle_weights(const Grid& grid) {
  auto axis_w = [&grid](int axis) {
    const int n = grid.resolution(axis);
    const double h = grid.spacing(axis);
    std::vector<double> w(n, h);
    w.front() = w.back() = 0.5 * h;
    return w;
  };
  const std::vector<double> wx = axis_w(0);
  if (grid.dimension() == 1) return wx;
  const std::vector<double> wy = axis_w(1);
  std::vector<double> w(grid.node_count());
  for (int j = 0; j < grid.resolution(1); ++j)
    for (int i = 0; i < grid.resolution(0); ++i) w[grid.index(i, j)] = wx[i] * wy[j];
  return w;
}

inline double oracle_modular(const Grid& grid, const std::vector<double>& u,
                             const ExponentField& e, double scale = 1.0) {
  const std::vector<double> w = oracle_weights(grid);
  double s = 0.0;
  for (int i = 0; i < grid.node_count(); ++i) {
    const double a = std::fabs(u[i]) / scale;
    if (a != 0.0) s += w[i] * std::pow(a, e[i]);
  }
  return s;
}

// Plain bisection on modular(u/s) = 1; independent of the library root finder.
inline double oracle_luxemburg(const Grid& grid, const std::vector<double>& u,
                               const ExponentField& e) {
  double amax = 0.0;
  for (double v : u) amax = std::max(amax, std::fabs(v));
  if (amax == 0.0) return 0.0;
  double lo = 1e-12 * amax, hi = 1e12 * amax;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (oracle_modular(grid, u, e, mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline ScalarField random_field(GridPtr grid, std::mt19937_64& rng, double amplitude = 1.0) {
  std::uniform_real_distribution<double> unif(-amplitude, amplitude);
  ScalarField u(grid);
  for (double& v : u.values) v = unif(rng);
  u.enforce_mask();
  return u;
}

// Subcritical 1d instance; every exponent window of the validation chain has
// room, so tests can perturb it.
inline Problem line_problem(int nodes = 33, double lambda = 5.0, bool pos_term = true) {
  GridPtr grid = Grid::line(1.0, nodes);
  ExponentField p = ExponentField::constant(grid, 2.0);
  ExponentField q = ExponentField::constant(grid, 4.0);
  Nonlinearity nl = Nonlinearity::example(ExponentField::constant(grid, 3.0),
                                          ExponentField::constant(grid, 2.5), p.sup(),
                                          pos_term);
  return Problem::make(grid, p, q, nl, lambda);
}

// The critical-growth 2d instance the solver acceptance runs on, scaled down.
inline Problem rect_problem(int n = 17, double lambda = 100.0) {
  GridPtr grid = Grid::rectangle(1.0, 1.0, n, n);
  ExponentField p = ExponentField::constant(grid, 1.5);
  ExponentField q = ExponentField::from_function(
      grid, [](double x, double) { return x < 0.5 ? 6.0 : 5.5; });
  Nonlinearity nl = Nonlinearity::example(ExponentField::constant(grid, 4.0),
                                          ExponentField::constant(grid, 3.0), p.sup(), true);
  return Problem::make(grid, p, q, nl, lambda);
}

}  // namespace pxlap::testing
