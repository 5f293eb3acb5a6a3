#include "warplab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace warplab {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

/// Crank-Nicolson stepper with the Thomas factorization of the constant
/// left-hand matrix precomputed once.  Operates on the full storage vector;
/// the last node is the Dirichlet wall and stays pinned at zero.
///
/// L = D2 - diag(Q): off-diagonal 1/h^2, diagonal -(2/h^2 + Q_j).
///   A = I - i dt/2 L  (applied to w+),   B = I + i dt/2 L  (applied to w).
class CnStepper {
 public:
  CnStepper(const Grid& grid, std::span<const double> q, double dt)
      : m_(grid.interior()), dt_(dt) {
    const double h = grid.spacing();
    off_ = -kI * dt / (2.0 * h * h);
    boff_ = -off_;
    adiag_.resize(m_);
    bdiag_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const double s = 2.0 / (h * h) + q[i];
      adiag_[i] = 1.0 + kI * (0.5 * dt) * s;
      bdiag_[i] = 1.0 - kI * (0.5 * dt) * s;
    }
    cp_.resize(m_);
    den_inv_.resize(m_);
    cd den = adiag_[0];
    den_inv_[0] = 1.0 / den;
    cp_[0] = off_ * den_inv_[0];
    for (int i = 1; i < m_; ++i) {
      den = adiag_[i] - off_ * cp_[i - 1];
      if (den == 0.0) throw std::runtime_error("cn_step: singular tridiagonal system");
      den_inv_[i] = 1.0 / den;
      cp_[i] = off_ * den_inv_[i];
    }
    rhs_.resize(m_);
  }

  void step(std::vector<cd>& w, const cd* source_half = nullptr) {
    for (int i = 0; i < m_; ++i) {
      cd acc = bdiag_[i] * w[i];
      if (i > 0) acc += boff_ * w[i - 1];
      acc += boff_ * w[i + 1];  // i + 1 <= m_: at worst the pinned wall value
      if (source_half) acc -= kI * dt_ * source_half[i];
      rhs_[i] = acc;
    }
    rhs_[0] *= den_inv_[0];
    for (int i = 1; i < m_; ++i) rhs_[i] = (rhs_[i] - off_ * rhs_[i - 1]) * den_inv_[i];
    w[m_ - 1] = rhs_[m_ - 1];
    for (int i = m_ - 2; i >= 0; --i) w[i] = rhs_[i] - cp_[i] * w[i + 1];
    w[m_] = 0.0;
  }

 private:
  int m_;
  double dt_;
  cd off_, boff_;
  std::vector<cd> adiag_, bdiag_, cp_, den_inv_, rhs_;
};

double sup_abs(const std::vector<cd>& w) {
  double s = 0.0;
  for (const cd& z : w) s = std::max(s, std::abs(z));
  return s;
}

double l2_sq(const std::vector<cd>& w) {
  double s = 0.0;
  for (const cd& z : w) s += std::norm(z);
  return s;
}

double tail_fraction_of(const std::vector<cd>& w, const Grid& grid, double tail_fraction) {
  const double cut = grid.r_max * (1.0 - tail_fraction);
  double tail = 0.0, total = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double m = std::norm(w[i]);
    total += m;
    if (grid.node(i) > cut) tail += m;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double default_dt(const Grid& grid, double T) {
  return std::min(grid.spacing(), 1e-2 * std::abs(T));
}

int step_count(const Grid& grid, double T, const SolveOptions& opts) {
  const double dt_target = opts.dt > 0.0 ? opts.dt : default_dt(grid, T);
  return std::max(1, static_cast<int>(std::llround(T / dt_target)));
}

struct Schedule {
  int steps = 1;
  double dt = 0.0;
  std::vector<std::pair<int, double>> snaps;  // (step index, time), ascending, starts at 0
};

Schedule make_schedule(const Grid& grid, double T, const std::vector<double>& snapshot_times,
                       const SolveOptions& opts) {
  if (!(T > 0.0)) throw std::invalid_argument("solve: horizon T must be positive");
  Schedule sch;
  sch.steps = step_count(grid, T, opts);
  sch.dt = T / sch.steps;
  std::vector<int> idx{0};  // t = 0 is always recorded
  for (double t : snapshot_times) {
    if (t < 0.0 || t > T * (1.0 + 1e-12)) continue;
    idx.push_back(std::clamp(static_cast<int>(std::llround(t / sch.dt)), 0, sch.steps));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (int k : idx) sch.snaps.emplace_back(k, k * sch.dt);
  return sch;
}

/// Source samples transformed to the half-line representation once, then
/// interpolated linearly in time (clamped outside the sampled range).
class SourceSampler {
 public:
  SourceSampler(const SourceSpec& spec, const WarpProfile& profile, int n, const Grid& grid) {
    for (const SourceSample& s : spec.samples) {
      if (static_cast<int>(s.values.size()) != grid.size())
        throw std::invalid_argument("source sample does not match the solver grid");
      RadialField f{grid, s.values, spec.rep, n};
      samples_.emplace_back(s.t, transform(f, Representation::WHalfline, profile).values);
    }
    std::sort(samples_.begin(), samples_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    scratch_.resize(samples_.front().second.size());
  }

  const std::vector<cd>& at(double t) {
    if (samples_.size() == 1 || t <= samples_.front().first) return samples_.front().second;
    if (t >= samples_.back().first) return samples_.back().second;
    std::size_t hi = 1;
    while (samples_[hi].first < t) ++hi;
    const auto& [t0, v0] = samples_[hi - 1];
    const auto& [t1, v1] = samples_[hi];
    const double lam = (t - t0) / (t1 - t0);
    for (std::size_t i = 0; i < v0.size(); ++i) scratch_[i] = (1.0 - lam) * v0[i] + lam * v1[i];
    return scratch_;
  }

 private:
  std::vector<std::pair<double, std::vector<cd>>> samples_;
  std::vector<cd> scratch_;
};

using PhaseHook = std::function<void(std::vector<cd>&)>;

Trajectory run_evolution(const WarpProfile& profile, int n, const RadialField& u0,
                         const SourceSpec* source, double T,
                         const std::vector<double>& snapshot_times, const SolveOptions& opts,
                         const PhaseHook& half_phase) {
  const Grid& grid = u0.grid;
  const Schedule sch = make_schedule(grid, T, snapshot_times, opts);

  EffectivePotential pot = make_potential(profile, n, grid, opts.c0_shift);
  std::vector<double> q_shifted(pot.q_values);
  if (opts.c0_shift != 0.0)
    for (double& q : q_shifted) q -= opts.c0_shift;
  CnStepper stepper(grid, q_shifted, sch.dt);

  std::optional<SourceSampler> src;
  if (source && !source->empty()) src.emplace(*source, profile, n, grid);

  std::vector<cd> w = transform(u0, Representation::WHalfline, profile).values;
  w[grid.size() - 1] = 0.0;  // Dirichlet wall

  Trajectory traj;
  traj.profile = profile;
  traj.dim_n = n;
  traj.step_dt = sch.dt;

  const double omega = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  const double mass0_sq = l2_sq(w);
  const double sup0 = sup_abs(w);

  auto record = [&](double t) {
    RadialField snap{grid, w, Representation::WHalfline, n};
    if (opts.c0_shift != 0.0) {
      const cd phase = std::exp(-kI * opts.c0_shift * t);
      for (cd& z : snap.values) z *= phase;
    }
    traj.times.push_back(t);
    traj.snapshots.push_back(transform(snap, opts.output_rep, profile));
    traj.diagnostics.mass_series.push_back(std::sqrt(omega * grid.spacing() * l2_sq(w)));
    const double tf = tail_fraction_of(w, grid, opts.boundary_tail_fraction);
    traj.diagnostics.boundary_mass_series.push_back(tf);
    if (tf > kBoundaryFlagThreshold) traj.diagnostics.boundary_flag = true;
  };

  std::size_t next_snap = 0;
  if (sch.snaps[next_snap].first == 0) {
    record(0.0);
    ++next_snap;
  }

  std::vector<cd> shifted_src;
  for (int k = 0; k < sch.steps; ++k) {
    const double t = k * sch.dt;
    if (half_phase) half_phase(w);
    const cd* s = nullptr;
    if (src) {
      const std::vector<cd>& raw = src->at(t + 0.5 * sch.dt);
      if (opts.c0_shift != 0.0) {
        // the conjugation moving Q to Q - c0 puts the phase on the source
        shifted_src = raw;
        const cd phase = std::exp(kI * opts.c0_shift * (t + 0.5 * sch.dt));
        for (cd& z : shifted_src) z *= phase;
        s = shifted_src.data();
      } else {
        s = raw.data();
      }
    }
    stepper.step(w, s);
    if (half_phase) half_phase(w);

    if (mass0_sq > 0.0) {
      const double drift = std::abs(std::sqrt(l2_sq(w) / mass0_sq) - 1.0);
      traj.diagnostics.mass_drift = std::max(traj.diagnostics.mass_drift, drift);
    }
    if (sup0 > 0.0) {
      const double growth = sup_abs(w) / sup0;
      if (growth > 1e6) throw BlowupError((k + 1) * sch.dt, growth);
    }
    while (next_snap < sch.snaps.size() && sch.snaps[next_snap].first == k + 1) {
      record(sch.snaps[next_snap].second);
      ++next_snap;
    }
  }
  return traj;
}

}  // namespace

BlowupError::BlowupError(double t, double g)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "nonlinear blow-up guard tripped at t = " << t << " (sup growth " << g << "x)";
        return os.str();
      }()),
      time(t),
      growth(g) {}

RadialField cn_step(const RadialField& w, const EffectivePotential& pot, double dt,
                    const std::vector<cd>* source_half) {
  if (w.rep != Representation::WHalfline)
    throw std::invalid_argument("cn_step operates on the half-line representation");
  if (!(w.grid == pot.grid)) throw std::invalid_argument("cn_step: field and potential grids differ");
  if (dt == 0.0) throw std::invalid_argument("cn_step: dt must be nonzero");
  CnStepper stepper(w.grid, pot.q_values, dt);
  RadialField out = w;
  out.values[w.grid.size() - 1] = 0.0;
  stepper.step(out.values, source_half ? source_half->data() : nullptr);
  return out;
}

Trajectory solve_linear(const WarpProfile& profile, int n, const RadialField& u0,
                        const SourceSpec* source, double T, const std::vector<double>& snapshot_times,
                        const SolveOptions& opts) {
  return run_evolution(profile, n, u0, source, T, snapshot_times, opts, nullptr);
}

Trajectory solve_nls(const WarpProfile& profile, int n, const RadialField& u0, double power,
                     NlsSign sign, double T, const std::vector<double>& snapshot_times,
                     const SolveOptions& opts) {
  if (!(power > 0.0)) throw std::invalid_argument("solve_nls: power must be positive");
  if (opts.c0_shift != 0.0)
    throw std::invalid_argument("solve_nls: the constant-shift trick applies to the linear flow");
  const Grid& grid = u0.grid;
  std::vector<double> tau(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    tau[i] = rep_weight_to_w(Representation::UOnM, profile, n, grid.node(i));

  // i u_t = -Lap u - sgn |u|^p u; the nonlinear sub-flow rotates each value by
  // exp(i sgn |u|^p dt/2) per half step, with |u| = |w|/tau.
  const double sgn = static_cast<double>(static_cast<int>(sign));
  const double half_dt = 0.5 * T / step_count(grid, T, opts);
  PhaseHook phase = [&, half_dt](std::vector<cd>& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double amp = std::abs(w[i]) / tau[i];
      w[i] *= std::exp(kI * (sgn * half_dt * std::pow(amp, power)));
    }
  };
  return run_evolution(profile, n, u0, nullptr, T, snapshot_times, opts, phase);
}

Trajectory free_euclidean_reference(int n, const RadialField& v0, double T,
                                    const std::vector<double>& snapshot_times,
                                    const SolveOptions& opts) {
  return solve_linear(WarpProfile::euclidean(), n, v0, nullptr, T, snapshot_times, opts);
}

RadialField evolve_linear(const RadialField& field, const WarpProfile& profile, int n,
                          double duration, double dt) {
  if (duration == 0.0) return field;
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_linear: dt must be positive");
  const Grid& grid = field.grid;
  const int steps = std::max(1, static_cast<int>(std::llround(std::abs(duration) / dt)));
  const double signed_dt = duration / steps;
  EffectivePotential pot = make_potential(profile, n, grid, 0.0);
  CnStepper stepper(grid, pot.q_values, signed_dt);
  RadialField w = transform(field, Representation::WHalfline, profile);
  w.values[grid.size() - 1] = 0.0;
  for (int k = 0; k < steps; ++k) stepper.step(w.values);
  return transform(w, field.rep, profile);
}

std::vector<double> boundary_diagnostic(const Trajectory& traj, double tail_fraction) {
  std::vector<double> out;
  out.reserve(traj.snapshots.size());
  for (const RadialField& snap : traj.snapshots) {
    const RadialField w = transform(snap, Representation::WHalfline, traj.profile);
    out.push_back(tail_fraction_of(w.values, w.grid, tail_fraction));
  }
  return out;
}

}  // namespace warplab
