#include "warplab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace warplab {

namespace {

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

// Trapezoid over the grid with zero contributions at both walls (integrands
// carry at least one power of phi or r, and the outer node is pinned), which
// collapses to h * sum over nodes.
double node_sum_integral(const Grid& grid, const std::vector<double>& f) {
  double acc = 0.0;
  for (double v : f) acc += v;
  return acc * grid.spacing();
}

}  // namespace

double strichartz_weight_exponent(int n, double q) {
  return 0.5 * (n - 1) * (1.0 - 2.0 / q);
}

double lq_on_M(const RadialField& u, const WarpProfile& profile, int n, double q,
               double weight_exp) {
  if (u.rep != Representation::UOnM)
    throw std::invalid_argument("lq_on_M expects the u representation");
  if (!(q >= 2.0)) throw std::invalid_argument("lq_on_M: q must be >= 2");
  const Grid& grid = u.grid;
  // Weights assembled in log space: phi^(n-1) alone overflows on large
  // exponential-profile boxes, exactly where |u| has underflowed to zero.
  if (std::isinf(q)) {
    double sup = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      const double a = std::abs(u.values[i]);
      if (a == 0.0) continue;
      const double r = grid.node(i);
      const double lw = weight_exp * (profile.log_phi(r) - std::log(r));
      sup = std::max(sup, std::exp(std::log(a) + lw));
    }
    return sup;
  }
  std::vector<double> f(grid.size(), 0.0);
  for (int i = 0; i < grid.size(); ++i) {
    const double a = std::abs(u.values[i]);
    if (a == 0.0) continue;
    const double r = grid.node(i);
    const double logphi = profile.log_phi(r);
    const double lw = weight_exp * (logphi - std::log(r));
    f[i] = std::exp(q * (std::log(a) + lw) + (n - 1) * logphi);
  }
  return std::pow(sphere_area(n) * node_sum_integral(grid, f), 1.0 / q);
}

double lq_flat(const RadialField& v, double q) {
  if (v.rep != Representation::VOnRn)
    throw std::invalid_argument("lq_flat expects the v representation");
  if (!(q >= 2.0)) throw std::invalid_argument("lq_flat: q must be >= 2");
  const Grid& grid = v.grid;
  const int n = v.dim_n;
  if (std::isinf(q)) {
    double sup = 0.0;
    for (const auto& z : v.values) sup = std::max(sup, std::abs(z));
    return sup;
  }
  std::vector<double> f(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    f[i] = std::pow(std::abs(v.values[i]), q) * std::pow(grid.node(i), n - 1);
  return std::pow(sphere_area(n) * node_sum_integral(grid, f), 1.0 / q);
}

double h1_on_M(const RadialField& u, const WarpProfile& profile, int n) {
  if (u.rep != Representation::UOnM)
    throw std::invalid_argument("h1_on_M expects the u representation");
  const Grid& grid = u.grid;
  const double h = grid.spacing();
  RadialField du = u;
  for (int i = 0; i < grid.size(); ++i) {
    const auto left = i > 0 ? u.values[i - 1] : std::complex<double>(0.0);  // u ~ const, w ~ r^beta: safe enough at the inner wall
    const auto right = i + 1 < grid.size() ? u.values[i + 1] : std::complex<double>(0.0);
    du.values[i] = (right - left) / (2.0 * h);
  }
  return lq_on_M(u, profile, n, 2.0) + lq_on_M(du, profile, n, 2.0);
}

NormReport spacetime_norm(const Trajectory& traj, const AdmissiblePair& pair, bool weighted) {
  if (traj.snapshots.empty()) throw std::invalid_argument("spacetime_norm: empty trajectory");
  const double t_span = traj.times.back() - traj.times.front();
  if (t_span > 0.0 && (traj.times.size() - 1) / t_span < 32.0 - 1e-9)
    throw std::invalid_argument("spacetime_norm: need at least 32 snapshots per unit time");

  const int n = traj.dim_n;
  const double wexp = weighted ? strichartz_weight_exponent(n, pair.q) : 0.0;

  std::vector<double> lq(traj.snapshots.size());
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const RadialField u = transform(traj.snapshots[i], Representation::UOnM, traj.profile);
    lq[i] = lq_on_M(u, traj.profile, n, pair.q, wexp);
  }

  NormReport report;
  report.pair = pair;
  report.weighted = weighted;
  report.weight_exponent = strichartz_weight_exponent(n, pair.q);
  report.value_tail_extrapolated = std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(pair.p)) {
    report.value = *std::max_element(lq.begin(), lq.end());
  } else {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < lq.size(); ++i) {
      const double dt = traj.times[i + 1] - traj.times[i];
      acc += 0.5 * dt * (std::pow(lq[i], pair.p) + std::pow(lq[i + 1], pair.p));
    }
    report.value = std::pow(acc, 1.0 / pair.p);

    // power-law tail of the integrand g = lq^p over the last decade:
    // int_T^inf g ~ g(T) T / (-1 - s) when the fitted slope s < -1
    const double T = traj.times.back();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (std::size_t i = 0; i < lq.size(); ++i) {
      if (traj.times[i] < T / 10.0 || traj.times[i] <= 0.0 || lq[i] <= 0.0) continue;
      const double x = std::log(traj.times[i]);
      const double y = pair.p * std::log(lq[i]);
      sx += x, sy += y, sxx += x * x, sxy += x * y, cnt += 1;
    }
    if (cnt >= 4) {
      const double det = cnt * sxx - sx * sx;
      const double slope = det != 0.0 ? (cnt * sxy - sx * sy) / det : 0.0;
      if (slope < -1.0) {
        const double g_end = std::pow(lq.back(), pair.p);
        report.value_tail_extrapolated =
            std::pow(acc + g_end * T / (-1.0 - slope), 1.0 / pair.p);
      }
    }
  }
  const double mass0 = traj.diagnostics.mass_series.empty()
                           ? field_mass(traj.snapshots.front(), traj.profile)
                           : traj.diagnostics.mass_series.front();
  report.quotient = mass0 > 0.0 ? report.value / mass0 : 0.0;
  return report;
}

std::vector<GaussianDatum> standard_datum_family() {
  // Family v2: the modulation wavenumber scales inversely with the width, so
  // the 21 data form the scaling orbit of three shapes (dimensionless
  // strengths 0, 1/2, 1).  A scale-invariant estimate must price the whole
  // orbit at one constant.
  std::vector<GaussianDatum> family;
  for (int e = -3; e <= 3; ++e) {
    const double w = std::pow(2.0, e);
    for (double strength : {0.0, 0.5, 1.0}) family.push_back({w, strength / w});
  }
  return family;
}

RadialField make_gaussian_u(const Grid& grid, int n, double width, double center,
                            double modulation) {
  // Outgoing phase k (sqrt(4w^2 + r^2) - 2w): matches k r beyond a couple of
  // widths but is smooth at the origin with its complex singularity a
  // distance 2w off the axis, so the momentum tail beyond k falls like
  // exp(-4 w dk).  A bare exp(i k r) has a radial cusp whose algebraic
  // momentum tail leaks fast ballistic mass to any wall; even a smoothing
  // on a fixed unit scale leaks for wide packets over long horizons.
  RadialField u{grid, std::vector<std::complex<double>>(grid.size()), Representation::UOnM, n};
  const double s = 2.0 * width;
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    const double d = r - center;
    const double phase = modulation * (std::sqrt(s * s + r * r) - s);
    u.values[i] = std::polar(std::exp(-d * d / (2.0 * width * width)), phase);
  }
  u.values[grid.size() - 1] = 0.0;
  return u;
}

DatumRun quotient_run_geometry(const GaussianDatum& datum, const QuotientSweepParams& params) {
  const double w = datum.width;
  const double k = datum.modulation;
  DatumRun run;
  run.horizon =
      std::clamp(params.saturation_factor * w * w, params.t_min, params.t_cap);
  const double speed = 2.0 * (k + 4.0 / w);  // group velocity of the momentum tail
  const double sigma_T = std::sqrt(w * w + std::pow(2.0 * run.horizon / w, 2));
  const double reach = speed * run.horizon + 5.0 * sigma_T + 10.0;
  const double h = std::min(params.resolution, w / 6.0);
  const int points = static_cast<int>((std::ceil(reach / h) + 255) / 256) * 256;
  run.grid = Grid(points * h, points);
  return run;
}

QuotientSweepResult strichartz_quotient_sweep(const WarpProfile& profile, int n,
                                              const AdmissiblePair& pair, bool weighted,
                                              const std::vector<GaussianDatum>& family,
                                              const QuotientSweepParams& params) {
  QuotientSweepResult res;
  res.quotients.assign(family.size(), std::numeric_limits<double>::quiet_NaN());

  double best = -1.0, worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const DatumRun run = quotient_run_geometry(family[i], params);
    const double T = run.horizon;
    // snapshot spacing must resolve the datum's dispersal time w^2, or the
    // time trapezoid overweights the initial spike of narrow data
    const double w2 = family[i].width * family[i].width;
    const double snap_dt = std::min(1.0, w2) / params.snapshots_per_unit_time;
    const int n_snaps = std::max(16, static_cast<int>(std::ceil(T / snap_dt)));
    std::vector<double> times(n_snaps + 1);
    for (int s = 0; s <= n_snaps; ++s) times[s] = T * s / n_snaps;

    RadialField v0 = make_gaussian_u(run.grid, n, family[i].width, 0.0, family[i].modulation);
    v0.rep = Representation::VOnRn;  // family v1 lives in the flat representation
    SolveOptions opts;
    opts.c0_shift = params.c0_shift;
    opts.dt = std::min(run.grid.spacing(), T / n_snaps);  // keep every snapshot on its own step
    const Trajectory traj = solve_linear(profile, n, v0, nullptr, T, times, opts);
    if (traj.diagnostics.boundary_flag) {
      res.excluded.push_back(static_cast<int>(i));
      continue;
    }
    const double quo = spacetime_norm(traj, pair, weighted).quotient;
    res.quotients[i] = quo;
    if (quo > best) {
      best = quo;
      res.argmax = static_cast<int>(i);
    }
    worst = std::min(worst, quo);
  }
  res.max_quotient = best;
  res.min_quotient = worst;
  return res;
}

double decay_fit(const Trajectory& traj, double t_lo, double t_hi) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw std::invalid_argument("decay_fit: bad window");
  std::vector<double> xs, ys;
  double first_amp = 0.0, last_amp = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_lo || t > t_hi) continue;
    const RadialField u = transform(traj.snapshots[i], Representation::UOnM, traj.profile);
    double sup = 0.0;
    for (const auto& z : u.values) sup = std::max(sup, std::abs(z));
    if (sup <= 0.0) throw std::invalid_argument("decay_fit: vanishing amplitude in window");
    if (xs.empty()) first_amp = sup;
    last_amp = sup;
    xs.push_back(std::log(t));
    ys.push_back(std::log(sup));
  }
  if (xs.size() < 4) throw std::invalid_argument("decay_fit: fewer than 4 snapshots in window");
  if (!(last_amp < first_amp) || std::log(first_amp / last_amp) < 1e-2)
    throw std::invalid_argument("decay_fit: no meaningful decay across window (before dispersion onset?)");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<double> scattering_residual(const Trajectory& traj) {
  if (traj.snapshots.size() < 2) throw std::invalid_argument("scattering_residual: need >= 2 snapshots");
  const WarpProfile& profile = traj.profile;
  const int n = traj.dim_n;
  const double t_ref = traj.times.back();
  const double dt = traj.step_dt;

  // Duhamel freeze: pull the final state back to t = 0 under the free flow,
  // then push it forward to every sampled time with the same step size so the
  // backward/forward pair cancels exactly on linear input.
  const RadialField u_ref = transform(traj.snapshots.back(), Representation::UOnM, profile);
  const RadialField u_tilde0 = evolve_linear(u_ref, profile, n, -t_ref, dt);

  std::vector<double> residual(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const RadialField free_i = evolve_linear(u_tilde0, profile, n, traj.times[i], dt);
    RadialField diff = transform(traj.snapshots[i], Representation::UOnM, profile);
    for (int j = 0; j < diff.grid.size(); ++j) diff.values[j] -= free_i.values[j];
    residual[i] = h1_on_M(diff, profile, n);
  }
  return residual;
}

}  // namespace warplab
