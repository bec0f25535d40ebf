#include "pxlap/discretization.hpp"

#include <cmath>
#include <stdexcept>

namespace pxlap {

Discretization::Discretization(GridPtr grid) : grid_(std::move(grid)) {
  const Grid& g = *grid_;
  const int n = g.node_count();
  node_weight_.assign(n, 0.0);
  const double hx = g.spacing(0);
  inv_h_[0] = 1.0 / hx;
  const int nx = g.resolution(0);

  if (g.dimension() == 1) {
    for (int i = 0; i < n; ++i)
      node_weight_[i] = (i == 0 || i == nx - 1) ? 0.5 * hx : hx;
    corners_.reserve(2 * (nx - 1));
    const double w = 0.5 * hx;
    for (int i = 0; i + 1 < nx; ++i) {
      corners_.push_back({i, i + 1, 0, 0, i, w});
      corners_.push_back({i, i + 1, 0, 0, i + 1, w});
    }
    return;
  }

  const double hy = g.spacing(1);
  inv_h_[1] = 1.0 / hy;
  const int ny = g.resolution(1);
  for (int j = 0; j < ny; ++j) {
    const double wy = (j == 0 || j == ny - 1) ? 0.5 * hy : hy;
    for (int i = 0; i < nx; ++i) {
      const double wx = (i == 0 || i == nx - 1) ? 0.5 * hx : hx;
      node_weight_[g.index(i, j)] = wx * wy;
    }
  }
  corners_.reserve(4 * (nx - 1) * (ny - 1));
  const double w = 0.25 * hx * hy;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      for (int b = j; b <= j + 1; ++b) {
        for (int a = i; a <= i + 1; ++a) {
          Corner c;
          c.x0 = g.index(i, b);
          c.x1 = g.index(i + 1, b);
          c.y0 = g.index(a, j);
          c.y1 = g.index(a, j + 1);
          c.node = g.index(a, b);
          c.weight = w;
          corners_.push_back(c);
        }
      }
    }
  }
}

double Discretization::integrate(const ScalarField& u) const {
  if (u.grid.get() != grid_.get())
    throw std::invalid_argument("field lives on a different grid");
  double s = 0.0;
  for (size_t i = 0; i < node_weight_.size(); ++i) s += node_weight_[i] * u.values[i];
  return s;
}

VectorField Discretization::nodal_gradient(const ScalarField& u) const {
  if (u.grid.get() != grid_.get())
    throw std::invalid_argument("field lives on a different grid");
  const Grid& g = *grid_;
  VectorField grad(grid_);
  for (int axis = 0; axis < g.dimension(); ++axis) {
    const int stride = axis == 0 ? 1 : g.resolution(0);
    const int last = g.resolution(axis) - 1;
    const double inv_h = inv_h_[axis];
    for (int node = 0; node < g.node_count(); ++node) {
      const int i = g.multi_index(node)[axis];
      double d;
      if (i == 0)
        d = (u.values[node + stride] - u.values[node]) * inv_h;
      else if (i == last)
        d = (u.values[node] - u.values[node - stride]) * inv_h;
      else
        d = 0.5 * (u.values[node + stride] - u.values[node - stride]) * inv_h;
      grad.comp[axis][node] = d;
    }
  }
  return grad;
}

double Discretization::dirichlet_energy(const ScalarField& u, const ExponentField& p,
                                        double eps_reg) const {
  if (u.grid.get() != grid_.get() || p.grid_ptr().get() != grid_.get())
    throw std::invalid_argument("field lives on a different grid");
  const double e2 = eps_reg * eps_reg;
  double s = 0.0;
  for (const Corner& c : corners_) {
    double gx, gy;
    corner_gradient(u, c, gx, gy);
    const double pe = p[c.node];
    s += c.weight / pe * std::pow(gx * gx + gy * gy + e2, 0.5 * pe);
  }
  return s;
}

ScalarField Discretization::p_laplacian_residual(const ScalarField& u, const ExponentField& p,
                                                 const ScalarField& rhs, double eps_reg,
                                                 int* singular_corners) const {
  if (u.grid.get() != grid_.get() || rhs.grid.get() != grid_.get() ||
      p.grid_ptr().get() != grid_.get())
    throw std::invalid_argument("field lives on a different grid");
  const double e2 = eps_reg * eps_reg;
  int singular = 0;
  ScalarField r(grid_, false);
  for (const Corner& c : corners_) {
    double gx, gy;
    corner_gradient(u, c, gx, gy);
    const double pe = p[c.node];
    const double g2 = gx * gx + gy * gy;
    if (g2 == 0.0 && pe < 2.0) ++singular;
    const double coef = c.weight * std::pow(g2 + e2, 0.5 * pe - 1.0);
    const double mx = coef * gx * inv_h_[0];
    r.values[c.x1] += mx;
    r.values[c.x0] -= mx;
    if (grid_->dimension() == 2) {
      const double my = coef * gy * inv_h_[1];
      r.values[c.y1] += my;
      r.values[c.y0] -= my;
    }
  }
  for (int i = 0; i < grid_->node_count(); ++i) {
    if (grid_->is_boundary(i))
      r.values[i] = 0.0;
    else
      r.values[i] -= node_weight_[i] * rhs.values[i];
  }
  if (singular_corners) *singular_corners = singular;
  return r;
}

}  // namespace pxlap
