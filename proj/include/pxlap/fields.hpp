#pragma once

#include <functional>
#include <vector>

#include "pxlap/grid.hpp"

namespace pxlap {

// Nodal scalar field.  When dirichlet is set the boundary values are pinned
// to zero and kept that way by every operation in the library.
struct ScalarField {
  GridPtr grid;
  std::vector<double> values;
  bool dirichlet = true;

  ScalarField() = default;
  explicit ScalarField(GridPtr g, bool dir = true);

  static ScalarField from_function(GridPtr g,
                                   const std::function<double(double, double)>& fn,
                                   bool dirichlet = true);

  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }

  // Zeroes boundary nodes when the Dirichlet flag is on.
  void enforce_mask();

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double t);

  double max_abs() const;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double t, ScalarField a);

// Nodewise positive and negative parts; both are nonnegative fields and
// u = plus - minus holds exactly.
ScalarField positive_part(const ScalarField& u);
ScalarField negative_part(const ScalarField& u);

double dot(const ScalarField& a, const ScalarField& b);

// Nodal vector field with one component array per spatial axis.
struct VectorField {
  GridPtr grid;
  std::vector<std::vector<double>> comp;

  explicit VectorField(GridPtr g);
  int dimension() const { return static_cast<int>(comp.size()); }
  double magnitude(int node) const;
};

void require_same_grid(const ScalarField& a, const ScalarField& b);

}  // namespace pxlap
