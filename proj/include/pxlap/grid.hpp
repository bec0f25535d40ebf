#pragma once

#include <array>
#include <memory>
#include <vector>

namespace pxlap {

// Uniform tensor grid on [0,Lx] (dimension 1) or [0,Lx]x[0,Ly] (dimension 2)
// with a homogeneous Dirichlet boundary mask.  Nodes are stored x-fastest:
// node = i + nx*j.
class Grid {
public:
  static std::shared_ptr<const Grid> line(double length, int nodes);
  static std::shared_ptr<const Grid> rectangle(double lx, double ly, int nx, int ny);

  int dimension() const { return dim_; }
  int node_count() const { return static_cast<int>(boundary_.size()); }
  int resolution(int axis) const { return res_[axis]; }
  double extent(int axis) const { return ext_[axis]; }
  double spacing(int axis) const { return ext_[axis] / (res_[axis] - 1); }
  double measure() const;
  // Length of the longest straight segment contained in the domain.
  double diameter() const;

  int index(int i, int j = 0) const { return i + res_[0] * j; }
  std::array<int, 2> multi_index(int node) const {
    return {node % res_[0], node / res_[0]};
  }
  double coord(int node, int axis) const {
    auto mi = multi_index(node);
    return mi[axis] * spacing(axis);
  }

  bool is_boundary(int node) const { return boundary_[node]; }
  int interior_count() const { return interior_count_; }

private:
  Grid(int dim, std::array<double, 2> ext, std::array<int, 2> res);

  int dim_;
  std::array<double, 2> ext_;
  std::array<int, 2> res_;
  std::vector<char> boundary_;
  int interior_count_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace pxlap
