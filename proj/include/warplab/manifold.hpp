#pragma once

#include "warplab/grid.hpp"
#include "warplab/warp_profile.hpp"

#include <vector>

namespace warplab {

/// Extremal sectional curvatures and the derived Ricci/scalar data at one
/// radius.  sec_rad = -phi''/phi, sec_tan = -((phi')^2 - 1)/phi^2.
struct CurvaturePoint {
  double r = 0.0;
  double sec_rad = 0.0;
  double sec_tan = 0.0;
  double ricci_tan = 0.0;  // Ricci eigenvalue on spherical directions
  double ricci_rad = 0.0;  // Ricci eigenvalue on the radial direction
  double scalar = 0.0;
};

CurvaturePoint curvature(const WarpProfile& profile, int n, double r);

/// tau = phi^((n-1)/2) (square root of the volume density) with derivatives,
/// and sigma = (r/phi)^((n-1)/2) (the flattening weight).
struct TauSigma {
  double tau = 0.0;
  double tau_p = 0.0;
  double tau_pp = 0.0;
  double sigma = 0.0;
};

TauSigma tau_sigma(const WarpProfile& profile, int n, double r);

double sigma_weight(const WarpProfile& profile, int n, double r);
double volume_weight(const WarpProfile& profile, int n, double r);  // phi^(n-1)

/// Effective potentials sampled on a solver grid.
///   Q = tau''/tau            (half-line representation)
///   V = Q - (n-1)(n-3)/4r^2  (flat R^n representation)
/// c0 is a caller-supplied constant shift tag (kept at 0 in the polynomial
/// regime); the sampled values are unshifted.
struct EffectivePotential {
  Grid grid;
  std::vector<double> q_values;
  std::vector<double> v_values;
  double c0 = 0.0;
  int dim_n = 3;
};

EffectivePotential make_potential(const WarpProfile& profile, int n, const Grid& grid, double c0 = 0.0);

// Pointwise evaluation, series-safe near the origin.  Below the switch
// radius (series_switch_radius) the cancellation-prone pieces phi''/phi and
// (phi'/phi)^2 - 1/r^2 are replaced by their origin expansions
//   phi''/phi            = phi'''(0) + (phi5(0) - phi'''(0)^2) r^2 / 6
//   (phi'/phi)^2 - 1/r^2 = (2/3) phi'''(0) + phi5(0) r^2 / 15
// (the r^2 terms are dropped when phi5(0) is unknown).
double potential_v(const WarpProfile& profile, int n, double r);
double potential_q(const WarpProfile& profile, int n, double r);
/// dQ/dr from closed-form derivative ratios (needs phi''' only).
double potential_q_prime(const WarpProfile& profile, int n, double r);
double potential_v_prime(const WarpProfile& profile, int n, double r);

double series_switch_radius(const WarpProfile& profile);

/// (phi'/phi)^2 - 1/r^2 with the cancellation between the two terms removed
/// algebraically; exposed because the hypotheses checks reuse it.
double centrifugal_gap(const WarpProfile& profile, double r);

}  // namespace warplab
