#include "warplab/hypotheses.hpp"

#include "warplab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace warplab {

namespace {

constexpr double kFitRmsTolerance = 1e-2;  // rms in log space for asymptotic-form fits

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = m * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit window is degenerate");
  LineFit f;
  f.slope = (m * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / m;
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    acc += e * e;
  }
  f.rms = std::sqrt(acc / m);
  return f;
}

std::vector<double> window_points(const std::vector<double>& grid, double lo, double hi) {
  std::vector<double> pts;
  for (double r : grid)
    if (r >= lo && r <= hi) pts.push_back(r);
  if (pts.size() < 8) throw std::invalid_argument("fit window holds fewer than 8 grid points");
  return pts;
}

/// Log-log tail slope of |f| over the last decade of the grid; 0 when the
/// samples there are numerically zero (an identically satisfied bound).
double tail_slope(const std::vector<double>& grid, const std::vector<double>& absf,
                  double zero_floor) {
  const double hi = grid.back();
  const double lo = hi / 10.0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < lo) continue;
    if (absf[i] <= zero_floor) continue;
    xs.push_back(std::log(grid[i]));
    ys.push_back(std::log(absf[i]));
  }
  if (xs.size() < 4) return 0.0;
  return fit_line(xs, ys).slope;
}

void require_grid(const std::vector<double>& grid) {
  if (grid.size() < 8) throw std::invalid_argument("sampling grid needs at least 8 points");
  if (!(grid.front() > 0.0)) throw std::invalid_argument("sampling grid must stay off r = 0");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("sampling grid must be ascending");
}

std::string finite_grid_caveat(double r_max) {
  std::ostringstream os;
  os << "asymptotic condition checked on the grid only; [" << r_max << ", inf) is extrapolated";
  return os.str();
}

}  // namespace

std::string condition_name(ConditionId id) {
  switch (id) {
    case ConditionId::SecBounded: return "sec_bounded";
    case ConditionId::NegCurvPoly: return "neg_curv_poly";
    case ConditionId::PolyBehaviour: return "poly_behaviour";
    case ConditionId::TauShiftedH1: return "tau_shifted_h1";
    case ConditionId::TauShiftedH2: return "tau_shifted_h2";
    case ConditionId::TauShiftedH3: return "tau_shifted_h3";
    case ConditionId::ExpCurv: return "exp_curv";
    case ConditionId::ExpBehaviour: return "exp_behaviour";
    case ConditionId::PotH1: return "pot_h1";
    case ConditionId::PotH2: return "pot_h2";
    case ConditionId::PotH3: return "pot_h3";
    case ConditionId::IntegrabilityI1: return "integrability_i1";
  }
  return "unknown";
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw std::invalid_argument("log_spaced: bad range");
  std::vector<double> out(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  return out;
}

HypothesisReport check_local(const WarpProfile& profile, int n, const std::vector<double>& grid) {
  require_grid(grid);
  if (grid.front() < 1.0 - 1e-12)
    throw std::invalid_argument("check_local: the bound is posed on [1, inf)");
  HypothesisReport rep;
  rep.condition = ConditionId::SecBounded;
  rep.grid_range = {grid.front(), grid.back()};
  double m = -1.0, at = grid.front();
  for (double r : grid) {
    const double val = std::exp(-profile.log_phi(r)) + std::abs(-profile.ratio2(r));
    if (val > m) {
      m = val;
      at = r;
    }
  }
  rep.extracted["m"] = m;
  rep.worst_margin = m;  // the condition defines m; the margin carries it
  rep.worst_r = at;
  rep.passed = true;
  rep.caveat = finite_grid_caveat(grid.back());
  (void)n;
  return rep;
}

std::pair<HypothesisReport, HypothesisReport> check_poly_theorem(
    const WarpProfile& profile, int n, const std::vector<double>& grid,
    std::pair<double, double> fit_window) {
  require_grid(grid);
  if (n < 3) throw std::invalid_argument("check_poly_theorem: n must be at least 3");

  HypothesisReport curv;
  curv.condition = ConditionId::NegCurvPoly;
  curv.grid_range = {grid.front(), grid.back()};
  double delta0 = std::numeric_limits<double>::infinity();
  for (double r : grid) {
    // sec_rad <= (1/(2(n-1)) - delta0)/r^2  <=>  1/(2(n-1)) + r^2 phi''/phi >= delta0
    const double margin = 1.0 / (2.0 * (n - 1)) + r * r * profile.ratio2(r);
    if (margin < delta0) {
      delta0 = margin;
      curv.worst_r = r;
    }
  }
  curv.worst_margin = delta0;
  curv.extracted["delta0"] = delta0;
  curv.passed = delta0 > 0.0;
  curv.caveat = finite_grid_caveat(grid.back());

  HypothesisReport poly;
  poly.condition = ConditionId::PolyBehaviour;
  poly.grid_range = {grid.front(), grid.back()};
  const std::vector<double> pts = window_points(grid, fit_window.first, fit_window.second);
  std::vector<double> xs, ys;
  for (double r : pts) {
    xs.push_back(std::log(r));
    ys.push_back(profile.log_phi(r));
  }
  const LineFit fit = fit_line(xs, ys);
  const double m = fit.slope;
  const double A = std::exp(fit.intercept);
  poly.extracted["m"] = m;
  poly.extracted["A"] = A;
  poly.worst_margin = kFitRmsTolerance - fit.rms;
  poly.passed = poly.worst_margin > 0.0 && m > 1.0 / (n - 1);
  // remainder eps = phi - A r^m, checked through three derivatives:
  // C = sup_j sup_r r^(j-m) |eps^(j)|
  double c_rem = 0.0;
  for (double r : pts) {
    double fac = 1.0;
    for (int j = 0; j <= 3; ++j) {
      const double lead = A * fac * std::pow(r, m - j);
      const double scaled = std::abs(profile.eval(r, j) - lead) * std::pow(r, j - m);
      if (scaled > c_rem) {
        c_rem = scaled;
        poly.worst_r = r;
      }
      fac *= (m - j);
    }
  }
  poly.extracted["C"] = c_rem;
  if (m > 1.0 / (n - 1)) poly.extracted["N"] = effective_dimension(m, n);
  poly.caveat = finite_grid_caveat(grid.back());
  if (!(m > 1.0 / (n - 1))) poly.caveat += "; fitted m is below 1/(n-1)";
  return {curv, poly};
}

std::array<HypothesisReport, 3> check_tau_conditions(const WarpProfile& profile, int n, double c0,
                                                     const std::vector<double>& grid,
                                                     const std::vector<double>& r_search) {
  require_grid(grid);
  if (c0 < 0.0) throw std::invalid_argument("check_tau_conditions: c0 < 0 is out of range");
  const std::size_t count = grid.size();
  std::vector<double> gap(count), lhs2(count), lhs3(count), absgap(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = grid[i];
    const double q = potential_q(profile, n, r);
    const double qp = potential_q_prime(profile, n, r);
    gap[i] = q - c0;
    absgap[i] = std::abs(gap[i]);
    lhs2[i] = r * r * gap[i];
    lhs3[i] = -r * r * (gap[i] + r * qp);  // -r^2 d/dr(r (Q - c0))
  }

  HypothesisReport h1;
  h1.condition = ConditionId::TauShiftedH1;
  h1.grid_range = {grid.front(), grid.back()};
  double c_sup = 0.0;
  const double floor = 1e-14 * (1.0 + std::abs(c0));
  bool identically_zero = true;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = grid[i] * grid[i] * absgap[i];
    if (v > c_sup) {
      c_sup = v;
      h1.worst_r = grid[i];
    }
    if (absgap[i] > floor) identically_zero = false;
  }
  h1.extracted["C"] = identically_zero ? 0.0 : c_sup;
  const double growth = identically_zero ? 0.0 : std::max(0.0, tail_slope(grid, absgap, floor) + 2.0);
  h1.worst_margin = 0.25 - growth;
  h1.passed = h1.worst_margin > 0.0;
  h1.caveat = finite_grid_caveat(grid.back());

  HypothesisReport h2;
  h2.condition = ConditionId::TauShiftedH2;
  h2.grid_range = h1.grid_range;
  double min2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i)
    if (lhs2[i] < min2) {
      min2 = lhs2[i];
      h2.worst_r = grid[i];
    }
  h2.worst_margin = 0.25 + min2;  // delta0 - 1/4 <= lhs2 with delta0 = margin
  h2.passed = h2.worst_margin > 0.0;
  h2.caveat = finite_grid_caveat(grid.back());

  HypothesisReport h3;
  h3.condition = ConditionId::TauShiftedH3;
  h3.grid_range = h1.grid_range;
  // suffix minima of lhs3 let every candidate R be scored in one pass
  std::vector<double> suffix_min(count);
  std::vector<std::size_t> suffix_arg(count);
  suffix_min[count - 1] = lhs3[count - 1];
  suffix_arg[count - 1] = count - 1;
  for (std::size_t i = count - 1; i-- > 0;) {
    if (lhs3[i] <= suffix_min[i + 1]) {
      suffix_min[i] = lhs3[i];
      suffix_arg[i] = i;
    } else {
      suffix_min[i] = suffix_min[i + 1];
      suffix_arg[i] = suffix_arg[i + 1];
    }
  }
  std::vector<double> candidates = r_search.empty() ? std::vector<double>{grid.front()} : r_search;
  std::sort(candidates.begin(), candidates.end());
  bool found = false;
  for (double R : candidates) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), R);
    if (it == grid.end()) break;
    const std::size_t i0 = static_cast<std::size_t>(it - grid.begin());
    const double margin = 0.25 + suffix_min[i0];
    h3.worst_margin = margin;
    h3.worst_r = grid[suffix_arg[i0]];
    h3.extracted["R"] = R;
    if (margin > 0.0) {
      found = true;
      break;
    }
  }
  h3.passed = found;
  h3.caveat = finite_grid_caveat(grid.back());
  if (!found) h3.caveat += "; no admissible R among the candidates";

  const double delta0 = std::min(h2.worst_margin, h3.worst_margin);
  h2.extracted["delta0"] = delta0;
  h3.extracted["delta0"] = delta0;
  h1.extracted["c0"] = c0;
  h2.extracted["c0"] = c0;
  h3.extracted["c0"] = c0;
  return {h1, h2, h3};
}

std::pair<HypothesisReport, HypothesisReport> check_exp_theorem(
    const WarpProfile& profile, int n, const std::vector<double>& grid,
    std::pair<double, double> fit_window) {
  require_grid(grid);
  if (n < 3) throw std::invalid_argument("check_exp_theorem: n must be at least 3");

  HypothesisReport behav;
  behav.condition = ConditionId::ExpBehaviour;
  behav.grid_range = {grid.front(), grid.back()};
  const std::vector<double> pts = window_points(grid, fit_window.first, fit_window.second);
  std::vector<double> xs, ys;
  for (double r : pts) {
    xs.push_back(r);
    ys.push_back(profile.log_phi(r));
  }
  const LineFit fit = fit_line(xs, ys);
  const double alpha = fit.slope;
  const double A = std::exp(fit.intercept);
  behav.extracted["alpha"] = alpha;
  behav.extracted["A"] = A;
  if (!(alpha > 0.0)) {
    behav.worst_margin = alpha;
    behav.passed = false;
    behav.caveat = "fitted growth rate is not positive; profile is not exponential";
  } else {
    behav.worst_margin = kFitRmsTolerance - fit.rms;
    behav.passed = behav.worst_margin > 0.0;
    behav.caveat = finite_grid_caveat(grid.back());
    // remainder of psi = (phi e^{-alpha r})^((n-1)/2) about A^((n-1)/2),
    // checked through three derivatives: |psi^(j)| <= C r^(-1-j)
    const double beta = 0.5 * (n - 1);
    double c_psi = 0.0;
    for (double r : pts) {
      const double psi = std::exp(beta * (profile.log_phi(r) - alpha * r));
      const double g1 = profile.ratio1(r) - alpha;
      const double l1 = beta * g1;
      const double l1p = beta * (profile.ratio2(r) - profile.ratio1(r) * profile.ratio1(r));
      const double l1pp = beta * (profile.ratio3(r) - 3.0 * profile.ratio1(r) * profile.ratio2(r) +
                                  2.0 * std::pow(profile.ratio1(r), 3));
      const double d0 = psi - std::pow(A, beta);
      const double d1 = psi * l1;
      const double d2 = psi * (l1p + l1 * l1);
      const double d3 = psi * (l1pp + 3.0 * l1 * l1p + l1 * l1 * l1);
      c_psi = std::max({c_psi, std::abs(d0) * r, std::abs(d1) * r * r, std::abs(d2) * r * r * r,
                        std::abs(d3) * r * r * r * r});
    }
    behav.extracted["C_psi"] = c_psi;
  }

  HypothesisReport curv;
  curv.condition = ConditionId::ExpCurv;
  curv.grid_range = behav.grid_range;
  const double c0 = alpha > 0.0 ? alpha * alpha * (n - 1) * (n - 1) / 4.0 : 0.0;
  double min2 = std::numeric_limits<double>::infinity();
  for (double r : grid) {
    const double lhs = r * r * (potential_q(profile, n, r) - c0);
    if (lhs < min2) {
      min2 = lhs;
      curv.worst_r = r;
    }
  }
  curv.worst_margin = 0.25 + min2;
  curv.passed = alpha > 0.0 && curv.worst_margin > 0.0;
  curv.extracted["delta0"] = curv.worst_margin;
  curv.extracted["c0"] = c0;
  curv.extracted["alpha"] = alpha;
  curv.extracted["A"] = A;
  curv.caveat = finite_grid_caveat(grid.back());
  return {curv, behav};
}

RadialPotential potential_from_profile(const WarpProfile& profile, int n, double c0) {
  RadialPotential pot;
  pot.value = [profile, n, c0](double r) { return potential_v(profile, n, r) - c0; };
  pot.derivative = [profile, n](double r) { return potential_v_prime(profile, n, r); };
  return pot;
}

std::array<HypothesisReport, 3> check_potential_H(const RadialPotential& V, int n,
                                                  const std::vector<double>& grid) {
  require_grid(grid);
  if (n < 3) throw std::invalid_argument("check_potential_H: n must be at least 3");
  if (!V.value) throw std::invalid_argument("check_potential_H: potential has no value function");
  const double nu = 0.5 * n - 1.0;
  const double nu2 = nu * nu;
  const std::size_t count = grid.size();

  std::vector<double> vals(count), absv(count);
  for (std::size_t i = 0; i < count; ++i) {
    vals[i] = V.value(grid[i]);
    absv[i] = std::abs(vals[i]);
  }

  HypothesisReport h1;
  h1.condition = ConditionId::PotH1;
  h1.grid_range = {grid.front(), grid.back()};
  double c_sup = 0.0;
  bool identically_zero = true;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = grid[i];
    const double v = (1.0 + r * r) * absv[i];
    if (v > c_sup) {
      c_sup = v;
      h1.worst_r = r;
    }
    if (absv[i] > 1e-14) identically_zero = false;
  }
  h1.extracted["C"] = identically_zero ? 0.0 : c_sup;
  const double growth = identically_zero ? 0.0 : std::max(0.0, tail_slope(grid, absv, 1e-300) + 2.0);
  h1.worst_margin = 0.25 - growth;
  h1.passed = h1.worst_margin > 0.0;
  h1.caveat = finite_grid_caveat(grid.back());

  HypothesisReport h2;
  h2.condition = ConditionId::PotH2;
  h2.grid_range = h1.grid_range;
  double min2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double lhs = nu2 + grid[i] * grid[i] * vals[i];
    if (lhs < min2) {
      min2 = lhs;
      h2.worst_r = grid[i];
    }
  }
  h2.worst_margin = min2;
  h2.passed = min2 > 0.0;
  h2.caveat = finite_grid_caveat(grid.back());

  HypothesisReport h3;
  h3.condition = ConditionId::PotH3;
  h3.grid_range = h1.grid_range;
  if (!V.derivative) {
    h3.worst_margin = -1.0;
    h3.passed = false;
    h3.caveat = "potential supplies no radial derivative; the repulsion condition is unverifiable";
  } else {
    std::vector<double> lhs3(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double r = grid[i];
      lhs3[i] = nu2 - r * r * (vals[i] + r * V.derivative(r));  // d/dr(rV) = V + r V'
    }
    std::vector<double> suffix_min(count);
    std::vector<std::size_t> suffix_arg(count);
    suffix_min[count - 1] = lhs3[count - 1];
    suffix_arg[count - 1] = count - 1;
    for (std::size_t i = count - 1; i-- > 0;) {
      if (lhs3[i] <= suffix_min[i + 1]) {
        suffix_min[i] = lhs3[i];
        suffix_arg[i] = i;
      } else {
        suffix_min[i] = suffix_min[i + 1];
        suffix_arg[i] = suffix_arg[i + 1];
      }
    }
    if (suffix_min[0] > 0.0) {
      h3.extracted["R"] = 0.0;  // holds from the first node on
      h3.worst_margin = suffix_min[0];
      h3.worst_r = grid[suffix_arg[0]];
      h3.passed = true;
    } else {
      h3.passed = false;
      h3.worst_margin = suffix_min[0];
      h3.worst_r = grid[suffix_arg[0]];
      for (std::size_t i = 1; i < count; ++i) {
        if (suffix_min[i] > 0.0) {
          h3.extracted["R"] = grid[i];
          h3.worst_margin = suffix_min[i];
          h3.worst_r = grid[suffix_arg[i]];
          h3.passed = true;
          break;
        }
      }
    }
    h3.caveat = finite_grid_caveat(grid.back());
  }

  const double delta0 = std::min(h2.worst_margin, h3.worst_margin);
  h2.extracted["delta0"] = delta0;
  h3.extracted["delta0"] = delta0;
  return {h1, h2, h3};
}

double cutoff_chi(double r, double R) {
  if (r <= R) return 0.0;
  if (r >= 2.0 * R) return 1.0;
  const double t = (r - R) / R;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double cutoff_chi_prime(double r, double R) {
  if (r <= R || r >= 2.0 * R) return 0.0;
  const double t = (r - R) / R;
  return 30.0 * t * t * (t - 1.0) * (t - 1.0) / R;
}

RadialPotential build_w_a(const RadialPotential& V, double R, double A) {
  if (!(R > 0.0)) throw std::invalid_argument("build_w_a: R must be positive");
  if (!(A >= 0.0)) throw std::invalid_argument("build_w_a: A must be nonnegative");
  RadialPotential w;
  w.value = [V, R, A](double r) {
    const double chi = cutoff_chi(r, R);
    return (1.0 - chi) * A / (r * r) + chi * V.value(r);
  };
  if (V.derivative) {
    w.derivative = [V, R, A](double r) {
      const double chi = cutoff_chi(r, R);
      const double chip = cutoff_chi_prime(r, R);
      return -chip * A / (r * r) - (1.0 - chi) * 2.0 * A / (r * r * r) + chip * V.value(r) +
             chi * V.derivative(r);
    };
  }
  return w;
}

MinimalAResult minimal_admissible_A(const RadialPotential& V, double R, int n, double delta0,
                                    const std::vector<double>& grid, double A_cap) {
  require_grid(grid);
  if (!V.derivative)
    throw std::invalid_argument("minimal_admissible_A: potential needs a derivative");
  const double nu2 = (0.5 * n - 1.0) * (0.5 * n - 1.0);

  auto margins = [&](double A) {
    const RadialPotential w = build_w_a(V, R, A);
    double m2 = std::numeric_limits<double>::infinity();
    double m3 = std::numeric_limits<double>::infinity();
    for (double r : grid) {
      const double wv = w.value(r);
      m2 = std::min(m2, nu2 + r * r * wv - delta0);
      m3 = std::min(m3, nu2 - r * r * (wv + r * w.derivative(r)) - delta0);
    }
    return std::pair{m2, m3};
  };

  // Both margins grow monotonically with A, so the first admissible candidate
  // on the geometric ladder is the minimal one.
  std::vector<double> ladder{0.0};
  for (double a = 1e-3; a <= A_cap; a *= 1.1) ladder.push_back(a);
  MinimalAResult res;
  for (double A : ladder) {
    const auto [m2, m3] = margins(A);
    res.A = A;
    res.margin_positive = m2;
    res.margin_repulsive = m3;
    if (m2 >= 0.0 && m3 >= 0.0) {
      res.found = true;
      return res;
    }
  }
  res.found = false;
  return res;
}

HypothesisReport check_integrability_I1(const WarpProfile& profile, int n, double d,
                                        double r_max) {
  if (n < 3) throw std::invalid_argument("check_integrability_I1: n must be at least 3");
  if (!(d > n)) throw std::invalid_argument("check_integrability_I1: requires d > n");
  if (!(r_max > 1.0)) throw std::invalid_argument("check_integrability_I1: r_max too small");

  const double beta = 0.5 * (n - 1);
  const double kappa = 2.0 * d / (d - n);
  auto log_integrand = [&](double r) {
    const double logphi = profile.log_phi(r);
    return kappa * beta * (std::log(r) - logphi) + (n - 1) * logphi;
  };

  const int cells = 20000;
  const double h = r_max / cells;
  double integral = 0.0;  // trapezoid; the integrand vanishes at r = 0
  for (int i = 1; i <= cells; ++i) {
    const double f = std::exp(log_integrand(i * h));
    integral += (i == cells ? 0.5 : 1.0) * f;
  }
  integral *= h;

  std::vector<double> xs, ys;
  for (double r : log_spaced(r_max / 10.0, r_max, 64)) {
    xs.push_back(std::log(r));
    ys.push_back(log_integrand(r));
  }
  const double slope = fit_line(xs, ys).slope;

  HypothesisReport rep;
  rep.condition = ConditionId::IntegrabilityI1;
  rep.grid_range = {0.0, r_max};
  rep.extracted["integral"] = integral;
  rep.extracted["tail_exponent"] = slope;
  rep.extracted["d"] = d;
  rep.worst_margin = -1.0 - slope;
  rep.worst_r = r_max;
  rep.passed = rep.worst_margin > 0.0;
  rep.caveat = "integral truncated at r_max; convergence judged from the tail exponent";
  return rep;
}

}  // namespace warplab
