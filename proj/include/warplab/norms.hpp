#pragma once

#include "warplab/exponents.hpp"
#include "warplab/solver.hpp"

#include <vector>

namespace warplab {

struct NormReport {
  AdmissiblePair pair;
  bool weighted = false;
  double weight_exponent = 0.0;  // (n-1)/2 (1 - 2/q), exponent on phi/r
  double value = 0.0;            // over the sampled window [0, T]
  double quotient = 0.0;         // value / ||u0||_L2(M)
  /// Window value plus a power-law tail fitted over the last decade of the
  /// integrand; NaN when the integrand has not entered a decaying power law
  /// (p = inf, too few samples, or tail exponent >= -1).  Makes truncation
  /// at the finite horizon explicit.
  double value_tail_extrapolated = 0.0;
};

/// Weighted L^q norm on M of a field in the u representation:
///   ( omega_{n-1} int |u (phi/r)^weight_exp|^q phi^(n-1) dr )^(1/q),
/// composite trapezoid on the grid; q = inf takes the weighted sup over nodes.
double lq_on_M(const RadialField& u, const WarpProfile& profile, int n, double q,
               double weight_exp = 0.0);

/// Flat L^q(R^n) norm of a field in the v representation (r^(n-1) measure).
double lq_flat(const RadialField& v, double q);

/// H1(M) norm as ||f||_L2(M) + ||f'||_L2(M), the derivative by centered
/// differences on the grid.
double h1_on_M(const RadialField& u, const WarpProfile& profile, int n);

/// The weight exponent (n-1)/2 (1 - 2/q) attached to a pair.
double strichartz_weight_exponent(int n, double q);

/// L^p in time of the (optionally weighted) L^q(M) norm over the trajectory
/// snapshots; trapezoid in time, max over snapshots when p = inf.  Requires
/// at least 32 snapshots per unit time.
NormReport spacetime_norm(const Trajectory& traj, const AdmissiblePair& pair, bool weighted);

struct GaussianDatum {
  double width = 1.0;
  double modulation = 0.0;  // outgoing phase exp(i k r)
};

/// The versioned sweep family (v1): widths 2^-3..2^3, modulations {0, 1, 2},
/// v0(r) = exp(-r^2/(2 w^2)) exp(i k r) in the flat v representation, so the
/// datum's mass stays localized on every profile.
std::vector<GaussianDatum> standard_datum_family();

RadialField make_gaussian_u(const Grid& grid, int n, double width, double center,
                            double modulation);

/// Sweep geometry.  Each datum gets its own horizon and box: the horizon
/// scales with the dispersal time w^2 (capped), and the box is sized so the
/// packet, moving at 2(k + 3/w) and spreading to sqrt(w^2 + (2T/w)^2), never
/// reaches the wall.
struct QuotientSweepParams {
  double t_cap = 80.0;
  double t_min = 0.4;
  double saturation_factor = 6.0;  // T_i = clamp(factor * w^2, t_min, t_cap)
  double resolution = 0.1;         // target h, refined to w/6 for narrow data
  double snapshots_per_unit_time = 32.0;
  double c0_shift = 0.0;
};

struct DatumRun {
  Grid grid;
  double horizon = 0.0;
};

DatumRun quotient_run_geometry(const GaussianDatum& datum, const QuotientSweepParams& params);

struct QuotientSweepResult {
  std::vector<double> quotients;   // one per family entry; NaN when excluded
  std::vector<int> excluded;       // indices whose runs tripped the boundary flag
  double max_quotient = 0.0;
  double min_quotient = 0.0;
  int argmax = -1;
};

QuotientSweepResult strichartz_quotient_sweep(const WarpProfile& profile, int n,
                                              const AdmissiblePair& pair, bool weighted,
                                              const std::vector<GaussianDatum>& family,
                                              const QuotientSweepParams& params = {});

/// Least-squares slope of log ||u(t)||_inf against log t on [t_lo, t_hi].
/// Rejects windows with under four samples, t_lo <= 0, or no decay across
/// the window (fit before dispersion onset is meaningless).
double decay_fit(const Trajectory& traj, double t_lo, double t_hi);

/// ||u(t) - exp(i t Lap_M) u~0||_H1(M) per snapshot time, where u~0 is the
/// free pullback of the final snapshot (Duhamel freeze at the last time).
std::vector<double> scattering_residual(const Trajectory& traj);

}  // namespace warplab
