#include "pxlap/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace pxlap {

ScalarField::ScalarField(GridPtr g, bool dir) : grid(std::move(g)), dirichlet(dir) {
  values.assign(grid->node_count(), 0.0);
}

ScalarField ScalarField::from_function(GridPtr g,
                                       const std::function<double(double, double)>& fn,
                                       bool dirichlet) {
  ScalarField u(std::move(g), dirichlet);
  const Grid& grid = *u.grid;
  for (int i = 0; i < grid.node_count(); ++i) {
    double x = grid.coord(i, 0);
    double y = grid.dimension() == 2 ? grid.coord(i, 1) : 0.0;
    u.values[i] = fn(x, y);
  }
  u.enforce_mask();
  return u;
}

void ScalarField::enforce_mask() {
  if (!dirichlet) return;
  for (int i = 0; i < size(); ++i)
    if (grid->is_boundary(i)) values[i] = 0.0;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(*this, o);
  for (int i = 0; i < size(); ++i) values[i] += o.values[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(*this, o);
  for (int i = 0; i < size(); ++i) values[i] -= o.values[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double t) {
  for (double& v : values) v *= t;
  return *this;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double t, ScalarField a) { return a *= t; }

ScalarField positive_part(const ScalarField& u) {
  ScalarField p = u;
  for (double& v : p.values) v = v > 0.0 ? v : 0.0;
  return p;
}

ScalarField negative_part(const ScalarField& u) {
  ScalarField m = u;
  for (double& v : m.values) v = v < 0.0 ? -v : 0.0;
  return m;
}

double dot(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a.values[i] * b.values[i];
  return s;
}

VectorField::VectorField(GridPtr g) : grid(std::move(g)) {
  comp.assign(grid->dimension(), std::vector<double>(grid->node_count(), 0.0));
}

double VectorField::magnitude(int node) const {
  double s = 0.0;
  for (const auto& c : comp) s += c[node] * c[node];
  return std::sqrt(s);
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid.get() != b.grid.get())
    throw std::invalid_argument("fields live on different grids");
}

}  // namespace pxlap
