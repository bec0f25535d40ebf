#pragma once

#include <vector>

#include "pxlap/exponent_field.hpp"
#include "pxlap/fields.hpp"
#include "pxlap/grid.hpp"

namespace pxlap {

// One quadrature point of the gradient rule.  Each grid cell contributes its
// corners with weight cell_measure / corners_per_cell; the gradient at a
// corner uses the two cell edges meeting there,
//   gx = (u[x1] - u[x0]) / hx,   gy = (u[y1] - u[y0]) / hy,
// and variable exponents are read at the corner node itself.  Summed over all
// cells this rule integrates constants exactly and its adjoint reproduces the
// standard 3-point (1d) / 5-point (2d) stencil when p == 2.
struct Corner {
  int x0, x1;
  int y0, y1;
  int node;
  double weight;
};

class Discretization {
public:
  explicit Discretization(GridPtr grid);

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }

  const std::vector<double>& node_weights() const { return node_weight_; }
  double node_weight(int i) const { return node_weight_[i]; }

  // Trapezoidal quadrature of a nodal field.
  double integrate(const ScalarField& u) const;

  // Central differences at interior nodes, one-sided at the boundary.
  // Exact for affine fields.
  VectorField nodal_gradient(const ScalarField& u) const;

  const std::vector<Corner>& corners() const { return corners_; }
  double inv_spacing(int axis) const { return inv_h_[axis]; }

  void corner_gradient(const ScalarField& u, const Corner& c, double& gx, double& gy) const {
    gx = (u.values[c.x1] - u.values[c.x0]) * inv_h_[0];
    gy = grid_->dimension() == 2 ? (u.values[c.y1] - u.values[c.y0]) * inv_h_[1] : 0.0;
  }

  // Gradient part of the energy: sum over corners of w/p * (|g|^2+eps^2)^(p/2).
  double dirichlet_energy(const ScalarField& u, const ExponentField& p, double eps_reg) const;

  // Weak residual of -div(|grad u|^(p-2) grad u) = rhs with a lumped load;
  // the exact nodal gradient of dirichlet_energy minus integrate(rhs*u).
  // Boundary rows are zero.  singular_corners, when given, counts quadrature
  // points with |grad u| = 0 and p < 2 where the regularized weight applies.
  ScalarField p_laplacian_residual(const ScalarField& u, const ExponentField& p,
                                   const ScalarField& rhs, double eps_reg,
                                   int* singular_corners = nullptr) const;

private:
  GridPtr grid_;
  std::vector<double> node_weight_;
  std::vector<Corner> corners_;
  double inv_h_[2] = {0.0, 0.0};
};

}  // namespace pxlap
