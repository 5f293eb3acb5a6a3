#pragma once

#include "warplab/manifold.hpp"
#include "warplab/warp_profile.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace warplab {

enum class ConditionId {
  SecBounded,
  NegCurvPoly,
  PolyBehaviour,
  TauShiftedH1,
  TauShiftedH2,
  TauShiftedH3,
  ExpCurv,
  ExpBehaviour,
  PotH1,
  PotH2,
  PotH3,
  IntegrabilityI1,
};

std::string condition_name(ConditionId id);

/// Numerical certificate for one hypothesis on a finite sampling grid.
///
/// Margin conventions:
///  - inequality conditions: worst_margin = min over the grid of
///    (lhs + 1/4)-style slack; the certified delta0 equals the margin.
///  - bound conditions (a constant C must exist): the constant is reported in
///    `extracted` and worst_margin = 1/4 - max(0, tail slope of the weighted
///    quantity), so boundedness at infinity passes with margin 1/4 and
///    polynomial growth fails.
///  - asymptotic-form conditions (fits): worst_margin = rms tolerance minus
///    the achieved fit residual.
/// In every case passed <=> worst_margin > 0, and the caveat records what a
/// finite grid cannot see.
struct HypothesisReport {
  ConditionId condition = ConditionId::SecBounded;
  bool passed = false;
  double worst_margin = 0.0;
  double worst_r = 0.0;
  std::map<std::string, double> extracted;
  std::pair<double, double> grid_range{0.0, 0.0};
  std::string caveat;
};

std::vector<double> log_spaced(double lo, double hi, int count);

/// Local boundedness: extracts m = sup (1/phi + |sec_rad|) over [1, r_max].
/// The condition defines m, so it always passes; worst_margin carries m.
HypothesisReport check_local(const WarpProfile& profile, int n, const std::vector<double>& grid);

/// Polynomial-regime pair: the curvature ceiling (delta0 extraction) and the
/// power-law form phi ~ A r^m fitted on `fit_window` (log-log least squares),
/// with the remainder checked through its first three derivatives.
std::pair<HypothesisReport, HypothesisReport> check_poly_theorem(
    const WarpProfile& profile, int n, const std::vector<double>& grid,
    std::pair<double, double> fit_window);

/// The three shifted conditions on Q = tau''/tau: |Q - c0| <= C/r^2,
/// r^2 (Q - c0) >= delta0 - 1/4, and -r^2 d/dr(r (Q - c0)) >= delta0 - 1/4
/// past some radius R searched over `r_search` candidates.
std::array<HypothesisReport, 3> check_tau_conditions(const WarpProfile& profile, int n, double c0,
                                                     const std::vector<double>& grid,
                                                     const std::vector<double>& r_search);

/// Exponential-regime pair: alpha/A from a linear fit of log phi against r,
/// then the curvature floor with c0 = alpha^2 (n-1)^2 / 4.
std::pair<HypothesisReport, HypothesisReport> check_exp_theorem(
    const WarpProfile& profile, int n, const std::vector<double>& grid,
    std::pair<double, double> fit_window);

/// Radial potential with an analytic derivative (finite differences are never
/// taken here; conditions involving d/dr(rV) need `derivative`).
struct RadialPotential {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // dV/dr; may be empty
};

/// V and V' of the conjugated potential of a profile, shifted by c0.
RadialPotential potential_from_profile(const WarpProfile& profile, int n, double c0 = 0.0);

/// The flat-space hypotheses on a potential: |V| <= C/<r>^2,
/// (n/2-1)^2 + r^2 V >= delta0, and (n/2-1)^2 - r^2 (rV)' >= delta0 for
/// r >= R.  A missing derivative makes the third condition unverifiable
/// (reported failed with a caveat).
std::array<HypothesisReport, 3> check_potential_H(const RadialPotential& V, int n,
                                                  const std::vector<double>& grid);

/// W_A = (1 - chi) A/r^2 + chi V with the quintic cutoff chi (0 below R, 1
/// above 2R, monotone C^2 in between).  W_A = V identically for r >= 2R.
RadialPotential build_w_a(const RadialPotential& V, double R, double A);

double cutoff_chi(double r, double R);
double cutoff_chi_prime(double r, double R);

struct MinimalAResult {
  bool found = false;
  double A = 0.0;
  double margin_positive = 0.0;   // min over grid of (n/2-1)^2 + r^2 W_A - delta0
  double margin_repulsive = 0.0;  // min over grid of (n/2-1)^2 - r^2 (r W_A)' - delta0
};

/// Smallest A on a geometric grid such that the two displayed inequalities
/// for W_A hold with the given delta0 everywhere on `grid`.
MinimalAResult minimal_admissible_A(const RadialPotential& V, double R, int n, double delta0,
                                    const std::vector<double>& grid, double A_cap = 1e6);

/// Integrability of sigma^(2d/(d-n)) phi^(n-1) on (0, r_max): composite
/// quadrature for the value plus a log-log tail-exponent fit; passes iff the
/// tail exponent stays below -1.  Requires d > n.
HypothesisReport check_integrability_I1(const WarpProfile& profile, int n, double d,
                                        double r_max);

}  // namespace warplab
