#pragma once

#include "warplab/field.hpp"
#include "warplab/manifold.hpp"

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace warplab {

/// Thrown when the focusing nonlinearity drives |w|_inf past the blow-up
/// guard (growth by more than 1e6 over the initial sup).
struct BlowupError : std::runtime_error {
  double time;
  double growth;
  BlowupError(double t, double g);
};

/// Optional radial source, sampled at a list of times and interpolated
/// linearly in between.  Samples must share one grid/representation.
struct SourceSample {
  double t = 0.0;
  std::vector<std::complex<double>> values;
};

struct SourceSpec {
  Representation rep = Representation::WHalfline;
  std::vector<SourceSample> samples;
  bool empty() const { return samples.empty(); }
};

struct TrajectoryDiagnostics {
  std::vector<double> mass_series;           // L2(M) norm per snapshot
  std::vector<double> boundary_mass_series;  // outer-tail mass fraction per snapshot
  double mass_drift = 0.0;                   // max relative norm deviation over every step
  bool boundary_flag = false;                // any snapshot's tail fraction > 1e-6
};

struct Trajectory {
  std::vector<double> times;  // strictly increasing, first entry is t = 0
  std::vector<RadialField> snapshots;
  double step_dt = 0.0;
  WarpProfile profile;
  int dim_n = 3;
  TrajectoryDiagnostics diagnostics;
};

/// One Crank-Nicolson step of i w_t = -w'' + Q w + s on the half-line grid:
///   (I - i dt/2 L) w+ = (I + i dt/2 L) w - i dt s,   L = D2 - diag(Q),
/// D2 the second difference with Dirichlet at both walls.  The scheme is
/// exactly unitary for s = 0 and real Q.  `source_half` (optional) is the
/// source sampled at the half step, in the w representation.
RadialField cn_step(const RadialField& w, const EffectivePotential& pot, double dt,
                    const std::vector<std::complex<double>>* source_half = nullptr);

struct SolveOptions {
  double dt = 0.0;          // <= 0 selects the default min(h, 1e-2 |T|)
  double c0_shift = 0.0;    // evolve with Q - c0, multiply snapshots by exp(-i c0 t)
  Representation output_rep = Representation::UOnM;
  double boundary_tail_fraction = 0.1;
};

Trajectory solve_linear(const WarpProfile& profile, int n, const RadialField& u0,
                        const SourceSpec* source, double T, const std::vector<double>& snapshot_times,
                        const SolveOptions& opts = {});

enum class NlsSign : int { Focusing = +1, Defocusing = -1 };

/// Strang splitting for i u_t + Lap_M u + sign |u|^p u = 0 in the w
/// representation.  The nonlinear phase acts through |u| = |w|/tau, not |w|:
/// the conjugation leaves the nonlinearity on u.  Mass is conserved exactly
/// per step (phase is modulus-preserving, the linear step unitary).
Trajectory solve_nls(const WarpProfile& profile, int n, const RadialField& u0, double power,
                     NlsSign sign, double T, const std::vector<double>& snapshot_times,
                     const SolveOptions& opts = {});

/// The flat reference flow (Euclidean profile, V = 0).
Trajectory free_euclidean_reference(int n, const RadialField& v0, double T,
                                    const std::vector<double>& snapshot_times,
                                    const SolveOptions& opts = {});

/// Propagate a single field by a signed duration under the linear flow and
/// return the final state in its original representation.  Used for Duhamel
/// pullbacks; shares every numerical choice with solve_linear.
RadialField evolve_linear(const RadialField& field, const WarpProfile& profile, int n,
                          double duration, double dt);

/// Mass fraction held in the outer `tail_fraction` of the grid, per snapshot.
std::vector<double> boundary_diagnostic(const Trajectory& traj, double tail_fraction = 0.1);

inline constexpr double kBoundaryFlagThreshold = 1e-6;

}  // namespace warplab
