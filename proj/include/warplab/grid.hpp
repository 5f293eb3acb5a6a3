#pragma once

#include <stdexcept>
#include <vector>

namespace warplab {

/// Uniform half-line grid.  Nodes sit at r_j = j*h, j = 1..num_points, with
/// h = r_max/num_points, so the origin is excluded and the last node lies on
/// the outer wall r_max.  Both walls are Dirichlet: fields are pinned to zero
/// at r = 0 (implicit ghost) and at the last node, so the evolving unknowns
/// are the first num_points-1 entries.
struct Grid {
  double r_max = 1.0;
  int num_points = 0;

  Grid() = default;
  Grid(double r_max_, int num_points_) : r_max(r_max_), num_points(num_points_) {
    if (r_max <= 0.0 || num_points < 2)
      throw std::invalid_argument("Grid: need r_max > 0 and at least 2 points");
  }

  double spacing() const { return r_max / num_points; }
  double node(int i) const { return (i + 1) * spacing(); }  // i = storage index, 0-based
  int size() const { return num_points; }
  int interior() const { return num_points - 1; }  // unknowns (last node is the wall)

  std::vector<double> nodes() const {
    std::vector<double> r(num_points);
    for (int i = 0; i < num_points; ++i) r[i] = node(i);
    return r;
  }

  bool operator==(const Grid&) const = default;
};

}  // namespace warplab
