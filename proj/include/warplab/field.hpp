#pragma once

#include "warplab/grid.hpp"
#include "warplab/warp_profile.hpp"

#include <complex>
#include <vector>

namespace warplab {

/// Which unknown a sampled radial field holds:
///   UOnM      u, the solution on the manifold
///   VOnRn     v = u / sigma, the flat R^n conjugate
///   WHalfline w = tau u = r^((n-1)/2) v, the half-line unknown
enum class Representation { UOnM, VOnRn, WHalfline };

struct RadialField {
  Grid grid;
  std::vector<std::complex<double>> values;  // values[i] at grid.node(i)
  Representation rep = Representation::WHalfline;
  int dim_n = 3;
};

/// Pointwise conversion weight into the half-line representation:
/// w = field * rep_weight_to_w(rep, ...).
double rep_weight_to_w(Representation rep, const WarpProfile& profile, int n, double r);

/// Exact change of representation (pointwise multiplication by positive
/// weights); transform(transform(x, b), a) == x up to rounding.
RadialField transform(const RadialField& field, Representation target, const WarpProfile& profile);

/// L^2(M) norm of the field (sphere factor included).  Computed in whatever
/// representation the field holds; all three agree identically because the
/// conversion weights are exactly the quadrature reweightings.
double field_mass(const RadialField& field, const WarpProfile& profile);

}  // namespace warplab
