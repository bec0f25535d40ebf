#include "pxlap/exponent_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pxlap {

ExponentField::ExponentField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->node_count())
    throw std::invalid_argument("exponent field size does not match grid");
  inf_ = std::numeric_limits<double>::infinity();
  sup_ = -std::numeric_limits<double>::infinity();
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("exponent values must be finite");
    inf_ = std::min(inf_, v);
    sup_ = std::max(sup_, v);
  }
  if (!(inf_ > 1.0)) throw std::invalid_argument("exponent field must satisfy e > 1");
}

ExponentField ExponentField::constant(GridPtr grid, double value) {
  std::vector<double> v(grid->node_count(), value);
  return ExponentField(std::move(grid), std::move(v));
}

ExponentField ExponentField::from_function(GridPtr grid,
                                           const std::function<double(double, double)>& fn) {
  std::vector<double> v(grid->node_count());
  for (int i = 0; i < grid->node_count(); ++i) {
    double x = grid->coord(i, 0);
    double y = grid->dimension() == 2 ? grid->coord(i, 1) : 0.0;
    v[i] = fn(x, y);
  }
  return ExponentField(std::move(grid), std::move(v));
}

std::pair<double, double> inf_sup(const ExponentField& e) {
  return {e.inf(), e.sup()};
}

ExponentField conjugate_exponent(const ExponentField& e) {
  std::vector<double> v(e.size());
  for (int i = 0; i < e.size(); ++i) v[i] = e[i] / (e[i] - 1.0);
  return ExponentField(e.grid_ptr(), std::move(v));
}

ExponentField critical_exponent(const ExponentField& p) {
  const double n = static_cast<double>(p.grid().dimension());
  if (!(p.sup() < n))
    throw std::invalid_argument("critical exponent needs p < N everywhere");
  std::vector<double> v(p.size());
  for (int i = 0; i < p.size(); ++i) v[i] = n * p[i] / (n - p[i]);
  return ExponentField(p.grid_ptr(), std::move(v));
}

CriticalSet critical_set(const ExponentField& p, const ExponentField& q, double tol) {
  if (p.grid_ptr().get() != q.grid_ptr().get())
    throw std::invalid_argument("exponent fields live on different grids");
  ExponentField ps = critical_exponent(p);
  CriticalSet set;
  set.q_inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < q.size(); ++i) {
    if (std::fabs(q[i] - ps[i]) <= tol) {
      set.nodes.push_back(i);
      set.q_inf = std::min(set.q_inf, q[i]);
    }
  }
  return set;
}

double log_holder_diagnostic(const ExponentField& e) {
  const Grid& g = e.grid();
  const int n = g.node_count();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = g.coord(i, 0);
    const double yi = g.dimension() == 2 ? g.coord(i, 1) : 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double dx = g.coord(j, 0) - xi;
      const double dy = (g.dimension() == 2 ? g.coord(j, 1) : 0.0) - yi;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d >= 0.5) continue;
      worst = std::max(worst, std::fabs(e[i] - e[j]) * std::log(1.0 / d));
    }
  }
  return worst;
}

}  // namespace pxlap
