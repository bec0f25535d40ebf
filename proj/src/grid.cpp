#include "pxlap/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace pxlap {

Grid::Grid(int dim, std::array<double, 2> ext, std::array<int, 2> res)
    : dim_(dim), ext_(ext), res_(res) {
  for (int a = 0; a < dim_; ++a) {
    if (res_[a] < 3) throw std::invalid_argument("grid needs at least 3 nodes per axis");
    if (!(ext_[a] > 0.0)) throw std::invalid_argument("grid extent must be positive");
  }
  const int n = res_[0] * (dim_ == 2 ? res_[1] : 1);
  boundary_.assign(n, 0);
  for (int node = 0; node < n; ++node) {
    auto mi = multi_index(node);
    bool b = mi[0] == 0 || mi[0] == res_[0] - 1;
    if (dim_ == 2) b = b || mi[1] == 0 || mi[1] == res_[1] - 1;
    boundary_[node] = b ? 1 : 0;
    if (!b) ++interior_count_;
  }
}

std::shared_ptr<const Grid> Grid::line(double length, int nodes) {
  return std::shared_ptr<const Grid>(new Grid(1, {length, 0.0}, {nodes, 1}));
}

std::shared_ptr<const Grid> Grid::rectangle(double lx, double ly, int nx, int ny) {
  return std::shared_ptr<const Grid>(new Grid(2, {lx, ly}, {nx, ny}));
}

double Grid::measure() const {
  return dim_ == 1 ? ext_[0] : ext_[0] * ext_[1];
}

double Grid::diameter() const {
  return dim_ == 1 ? ext_[0] : std::hypot(ext_[0], ext_[1]);
}

}  // namespace pxlap
