#include "pxlap/sobolev.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "pxlap/modular.hpp"

namespace pxlap {

namespace {

// d||grad u||_p / du by implicit differentiation of the unit-modular root:
// with ghat = grad u / sigma, the derivative is the flux adjoint of
// p |ghat|^{p-2} ghat divided by sum w p |ghat|^p.
ScalarField grad_norm_gradient(const Discretization& disc, const ScalarField& u,
                               const ExponentField& p, double sigma) {
  ScalarField out(u.grid, false);
  double denom = 0.0;
  const double inv_sigma = 1.0 / sigma;
  for (const Corner& c : disc.corners()) {
    double gx, gy;
    disc.corner_gradient(u, c, gx, gy);
    gx *= inv_sigma;
    gy *= inv_sigma;
    const double g2 = gx * gx + gy * gy;
    if (g2 == 0.0) continue;
    const double pe = p[c.node];
    const double coef = c.weight * pe * std::pow(g2, 0.5 * pe - 1.0);
    denom += coef * g2;
    const double mx = coef * gx * disc.inv_spacing(0) * inv_sigma;
    out.values[c.x1] += mx;
    out.values[c.x0] -= mx;
    if (disc.grid().dimension() == 2) {
      const double my = coef * gy * disc.inv_spacing(1) * inv_sigma;
      out.values[c.y1] += my;
      out.values[c.y0] -= my;
    }
  }
  const double scale = sigma / denom;
  for (int i = 0; i < out.size(); ++i)
    out.values[i] = disc.grid().is_boundary(i) ? 0.0 : out.values[i] * scale;
  return out;
}

ScalarField value_norm_gradient(const Discretization& disc, const ScalarField& u,
                                const ExponentField& e, double sigma) {
  ScalarField out(u.grid, false);
  double denom = 0.0;
  const double inv_sigma = 1.0 / sigma;
  for (int i = 0; i < u.size(); ++i) {
    const double a = std::fabs(u.values[i]) * inv_sigma;
    if (a == 0.0) continue;
    const double ee = e[i];
    const double w = disc.node_weight(i);
    denom += w * ee * std::pow(a, ee);
    out.values[i] = w * ee * std::pow(a, ee - 1.0) * (u.values[i] > 0.0 ? 1.0 : -1.0);
  }
  for (int i = 0; i < out.size(); ++i)
    out.values[i] = disc.grid().is_boundary(i) ? 0.0 : out.values[i] / denom;
  return out;
}

ScalarField half_wave(GridPtr grid) {
  const double pi = 3.14159265358979323846;
  return ScalarField::from_function(grid, [&](double x, double y) {
    double v = std::sin(pi * x / grid->extent(0));
    if (grid->dimension() == 2) v *= std::sin(pi * y / grid->extent(1));
    return v;
  });
}

ScalarField smoothed_noise(GridPtr grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  ScalarField u(grid);
  for (double& v : u.values) v = unif(rng);
  u.enforce_mask();
  // a few nearest-neighbor averaging passes take the roughness out
  const int nx = grid->resolution(0);
  const int ny = grid->dimension() == 2 ? grid->resolution(1) : 1;
  for (int pass = 0; pass < 4; ++pass) {
    ScalarField next(grid);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int n = i + nx * j;
        double acc = 2.0 * u.values[n];
        double cnt = 2.0;
        if (i > 0) acc += u.values[n - 1], cnt += 1.0;
        if (i + 1 < nx) acc += u.values[n + 1], cnt += 1.0;
        if (grid->dimension() == 2) {
          if (j > 0) acc += u.values[n - nx], cnt += 1.0;
          if (j + 1 < ny) acc += u.values[n + nx], cnt += 1.0;
        }
        next.values[n] = acc / cnt;
      }
    next.enforce_mask();
    u = next;
  }
  return u;
}

}  // namespace

RayleighEstimate rayleigh_minimum(const Discretization& disc, const ExponentField& p,
                                  const ExponentField& e, int starts, int iterations,
                                  std::uint64_t rng_seed) {
  if (starts < 1) starts = 1;
  std::mt19937_64 rng(rng_seed);
  GridPtr grid = disc.grid_ptr();

  RayleighEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  best.minimizer = ScalarField(grid);

  auto quotient = [&](const ScalarField& u, double& num, double& den) {
    num = gradient_luxemburg_norm(disc, u, p);
    den = luxemburg_norm(disc, u, e);
    return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
  };

  for (int s = 0; s < starts; ++s) {
    ScalarField u = s == 0 ? half_wave(grid) : smoothed_noise(grid, rng);
    double num, den;
    double r = quotient(u, num, den);
    if (!std::isfinite(r)) continue;
    u *= 1.0 / den;
    num /= den;
    den = 1.0;

    double alpha = 1.0;
    bool moving = true;
    for (int it = 0; it < iterations; ++it) {
      // grad R = grad num - R * grad den at den = 1
      ScalarField gn = grad_norm_gradient(disc, u, p, num);
      ScalarField gd = value_norm_gradient(disc, u, e, den);
      ScalarField dir(grid);
      double d2 = 0.0;
      for (int i = 0; i < u.size(); ++i) {
        dir.values[i] = -(gn.values[i] - r * gd.values[i]);
        d2 += dir.values[i] * dir.values[i];
      }
      if (d2 == 0.0) {
        moving = false;
        break;
      }
      bool accepted = false;
      for (int bt = 0; bt < 30; ++bt) {
        ScalarField cand = u;
        for (int i = 0; i < u.size(); ++i) cand.values[i] += alpha * dir.values[i];
        double cnum, cden;
        const double cr = quotient(cand, cnum, cden);
        if (cr < r - 1e-4 * alpha * d2) {
          cand *= 1.0 / cden;
          u = cand;
          r = cr;
          num = cnum / cden;
          den = 1.0;
          ++best.iterations;
          accepted = true;
          alpha *= 2.0;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        moving = false;
        break;
      }
      if (it + 1 == iterations && moving) best.warning = true;
    }
    if (r < best.value) {
      best.value = r;
      best.minimizer = u;
    }
  }
  return best;
}

}  // namespace pxlap
