#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pxlap/grid.hpp"

namespace pxlap {

// Nodal variable exponent e(x) with cached essential bounds e^- and e^+.
// Exponents used as integrability indices must stay strictly above 1.
class ExponentField {
public:
  ExponentField(GridPtr grid, std::vector<double> values);
  static ExponentField constant(GridPtr grid, double value);
  static ExponentField from_function(GridPtr grid,
                                     const std::function<double(double, double)>& fn);

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  double operator[](int node) const { return values_[node]; }
  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  double inf() const { return inf_; }
  double sup() const { return sup_; }

private:
  GridPtr grid_;
  std::vector<double> values_;
  double inf_, sup_;
};

std::pair<double, double> inf_sup(const ExponentField& e);

// Pointwise Holder conjugate e/(e-1); requires e > 1 everywhere.
ExponentField conjugate_exponent(const ExponentField& e);

// Pointwise Sobolev critical exponent N*p/(N-p) with N the grid dimension;
// requires p < N everywhere, so this is meaningful on 2-d grids only.
ExponentField critical_exponent(const ExponentField& p);

// Nodes where q touches the critical exponent of p within tol, plus the
// infimum of q over that set (+inf when the set is empty).
struct CriticalSet {
  std::vector<int> nodes;
  double q_inf;
  bool empty() const { return nodes.empty(); }
};
CriticalSet critical_set(const ExponentField& p, const ExponentField& q, double tol);

// max |e(x)-e(y)| * log(1/|x-y|) over node pairs with 0 < |x-y| < 1/2.
// Finite on any fixed grid; grows under refinement when e jumps.
double log_holder_diagnostic(const ExponentField& e);

}  // namespace pxlap
