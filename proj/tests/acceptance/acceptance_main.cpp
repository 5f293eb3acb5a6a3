// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned in code next to each check.

#include "warplab/exponents.hpp"
#include "warplab/hypotheses.hpp"
#include "warplab/norms.hpp"
#include "warplab/resolvent.hpp"
#include "warplab/solver.hpp"

#include "support/dense_oracle.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace warplab;
using cd = std::complex<double>;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

double rel_l2_diff(const RadialField& a, const RadialField& b, const WarpProfile& profile) {
  RadialField diff = a;
  for (int i = 0; i < a.grid.size(); ++i) diff.values[i] -= b.values[i];
  return field_mass(diff, profile) / field_mass(a, profile);
}

std::vector<double> uniform_times(double T, int count) {
  std::vector<double> t(count + 1);
  for (int i = 0; i <= count; ++i) t[i] = T * i / count;
  return t;
}

// ---------------------------------------------------------------- criterion 1
bool c1_transform_equivalence(std::string& detail) {
  const int n = 3;
  const WarpProfile hyp = WarpProfile::hyperbolic(1.0);
  const double T = 1.0;
  std::vector<double> mismatch;
  for (int points : {2048, 4096, 8192}) {
    const Grid grid(20.0, points);
    const RadialField u0 = make_gaussian_u(grid, n, 1.0, 10.0, 0.0);
    SolveOptions opts;
    opts.dt = T / (points / 4);  // dt scales with h and T/dt stays an integer
    const Trajectory via_w = solve_linear(hyp, n, u0, nullptr, T, {T}, opts);
    const RadialField direct = warplab::testing::evolve_u_direct(u0, hyp, n, T, opts.dt);
    mismatch.push_back(rel_l2_diff(via_w.snapshots.back(), direct, hyp));
  }
  const double order1 = std::log2(mismatch[0] / mismatch[1]);
  const double order2 = std::log2(mismatch[1] / mismatch[2]);
  std::ostringstream os;
  os << "mismatch " << mismatch[0] << " -> " << mismatch[1] << " -> " << mismatch[2]
     << ", observed orders " << order1 << ", " << order2 << " (need >= 1.9)";
  detail = os.str();
  return order1 >= 1.9 && order2 >= 1.9;
}

// ---------------------------------------------------------------- criterion 2
bool c2_closed_form_potential(std::string& detail) {
  double worst = 0.0;
  for (auto [n, m] : {std::pair<int, double>{3, 2.0}, {3, 3.0}, {4, 2.0}}) {
    const WarpProfile profile = WarpProfile::power_law(m);
    const double N = m * (n - 1) + 1.0;
    const double coeff = ((N - 1.0) * (N - 3.0) - (n - 1.0) * (n - 3.0)) / 4.0;
    for (int i = 0; i <= 500; ++i) {
      const double r = 5.0 + 45.0 * i / 500.0;
      const double expected = coeff / (r * r);
      worst = std::max(worst, std::abs(potential_v(profile, n, r) - expected) / std::abs(expected));
    }
  }
  std::ostringstream os;
  os << "worst relative deviation " << worst << " (need <= 1e-9)";
  detail = os.str();
  return worst <= 1e-9;
}

// ---------------------------------------------------------------- criterion 3
bool c3_hypothesis_certification(std::string& detail) {
  const auto [curv, poly] = check_poly_theorem(WarpProfile::odd_polynomial({1.0}), 3,
                                               log_spaced(1e-2, 1e3, 3000), {100.0, 1000.0});
  const double m = poly.extracted.at("m");
  const double N = poly.extracted.at("N");
  const double delta0 = curv.extracted.at("delta0");
  const auto [ecurv, behav] = check_exp_theorem(WarpProfile::hyperbolic(1.0), 3,
                                                log_spaced(1e-2, 200.0, 3000), {20.0, 200.0});
  const double alpha = behav.extracted.at("alpha");
  const double A = behav.extracted.at("A");
  std::ostringstream os;
  os << "poly: m = " << m << " (3 +- 0.01), N = " << N << " (7 +- 0.02), delta0 = " << delta0
     << " (> 0); exp: alpha = " << alpha << " (1 +- 0.005), A = " << A << " (0.5 +- 0.005)";
  detail = os.str();
  return curv.passed && poly.passed && std::abs(m - 3.0) <= 0.01 && std::abs(N - 7.0) <= 0.02 &&
         delta0 > 0.0 && ecurv.passed && behav.passed && std::abs(alpha - 1.0) <= 0.005 &&
         std::abs(A - 0.5) <= 0.005;
}

// ---------------------------------------------------------------- criterion 4
bool c4_duality_identity(std::string& detail) {
  const Grid grid(15.0, 400);
  const int n = 3;
  double worst = 0.0;
  for (const WarpProfile& profile :
       {WarpProfile::euclidean(), WarpProfile::hyperbolic(1.0),
        WarpProfile::odd_polynomial({1.0})}) {
    for (unsigned seed = 0; seed < 50; ++seed) {
      const RadialField h = warplab::testing::random_field(grid, n, 1000 + seed);
      const RadialField v = transform(h, Representation::VOnRn, profile);
      for (double q : {2.0, 3.0, 6.0}) {
        const double lhs = lq_on_M(h, profile, n, q, strichartz_weight_exponent(n, q));
        const double rhs = lq_flat(v, q);
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
      }
    }
  }
  std::ostringstream os;
  os << "worst relative defect " << worst << " over 50 fields x 3 profiles x q in {2,3,6}"
     << " (need <= 1e-10)";
  detail = os.str();
  return worst <= 1e-10;
}

// ---------------------------------------------------------------- criterion 5
bool c5_dispersive_decay(std::string& detail) {
  const int n = 3;
  // flat R^3 gaussian: amplitude (1 + 4t^2)^(-3/4), slope -> -3/2
  const Grid grid_flat(80.0, 2048);
  const RadialField u0 = make_gaussian_u(grid_flat, n, 1.0, 0.0, 0.0);
  const Trajectory flat =
      solve_linear(WarpProfile::euclidean(), n, u0, nullptr, 8.0, uniform_times(8.0, 256));
  const double slope_flat = decay_fit(flat, 1.0, 8.0);

  // phi = r^2, n = 3: effective dimension N = 5, late-time slope -> -5/2
  const Grid grid_eff(100.0, 2048);
  const RadialField u5 = make_gaussian_u(grid_eff, n, 1.0, 0.0, 0.0);
  const Trajectory eff =
      solve_linear(WarpProfile::power_law(2.0), n, u5, nullptr, 8.0, uniform_times(8.0, 256));
  const double slope_eff = decay_fit(eff, 2.0, 8.0);

  std::ostringstream os;
  os << "flat slope " << slope_flat << " (-1.5 +- 0.1), N=5 slope " << slope_eff
     << " (-2.5 +- 0.15)";
  detail = os.str();
  return std::abs(slope_flat + 1.5) <= 0.1 && std::abs(slope_eff + 2.5) <= 0.15 &&
         !flat.diagnostics.boundary_flag && !eff.diagnostics.boundary_flag;
}

// ---------------------------------------------------------------- criterion 6
bool c6_conservation(std::string& detail) {
  const Grid grid(20.0, 512);
  const int n = 3;
  const RadialField u0 = make_gaussian_u(grid, n, 1.0, 6.0, 0.0);
  SolveOptions opts;
  opts.dt = 1e-4;  // 10^4 steps across T = 1
  const Trajectory lin =
      solve_linear(WarpProfile::hyperbolic(1.0), n, u0, nullptr, 1.0, {1.0}, opts);
  const Trajectory nls = solve_nls(WarpProfile::hyperbolic(1.0), n, u0, 2.0, NlsSign::Defocusing,
                                   1.0, {1.0}, opts);
  std::ostringstream os;
  os << "linear drift " << lin.diagnostics.mass_drift << " (<= 1e-10), splitting drift "
     << nls.diagnostics.mass_drift << " (<= 1e-8) over 10^4 steps";
  detail = os.str();
  return lin.diagnostics.mass_drift <= 1e-10 && nls.diagnostics.mass_drift <= 1e-8;
}

// ---------------------------------------------------------------- criterion 7
bool c7_resolvent_surrogate(std::string& detail) {
  // free radial operator: hyperbolic n = 3 with the exact shift c0 = 1
  auto free_op = [](double r_max, int points) {
    const Grid grid(r_max, points);
    EffectivePotential pot = make_potential(WarpProfile::hyperbolic(1.0), 3, grid, 1.0);
    for (double& q : pot.q_values) q -= 1.0;
    return assemble(pot);
  };

  std::vector<double> lambdas(40);
  for (int i = 0; i < 40; ++i) lambdas[i] = -2.0 + 22.0 * i / 39.0;
  const std::vector<double> eps{0.5, 0.1, 0.02};

  const DiscreteOperator base = free_op(600.0, 8192);
  const ResolventSweep sweep = resolvent_sweep(base, lambdas, eps);
  if (sweep.non_converged > 0) {
    detail = std::to_string(sweep.non_converged) + " samples failed to converge";
    return false;
  }
  double lo = 1e300, hi = 0.0;
  for (const ResolventSample& s : sweep.samples) {
    lo = std::min(lo, s.scaled);
    hi = std::max(hi, s.scaled);
  }

  const DiscreteOperator doubled = free_op(1200.0, 16384);
  const ResolventSweep sweep2 = resolvent_sweep(doubled, lambdas, eps);
  const double sup_shift = std::abs(sweep2.sup_scaled - sweep.sup_scaled) / sweep.sup_scaled;

  // dense oracle at 10 random spots on a 200-point operator
  const DiscreteOperator small = free_op(20.0, 200);
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> lam_dist(-2.0, 20.0);
  double worst_dense = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double lam = lam_dist(gen);
    const double ep = eps[k % 3];
    const ResolventSample s = weighted_resolvent_norm(small, lam, ep);
    if (!s.converged) {
      detail = "dense-oracle spot sample did not converge";
      return false;
    }
    const double dense = warplab::testing::dense_weighted_resolvent_norm(small, lam, ep);
    worst_dense = std::max(worst_dense, std::abs(s.norm - dense) / dense);
  }

  std::ostringstream os;
  os << "scaled range [" << lo << ", " << hi << "], ratio " << hi / lo
     << " (<= 10); sup shift under doubling " << 100.0 * sup_shift
     << "% (<= 20%); dense-oracle defect " << worst_dense << " (<= 1e-6)";
  detail = os.str();
  return sweep2.non_converged == 0 && hi / lo <= 10.0 && sup_shift <= 0.20 &&
         worst_dense <= 1e-6;
}

// ---------------------------------------------------------------- criterion 8
bool c8_h2_positivity(std::string& detail) {
  const Grid grid(40.0, 600);
  const std::vector<double> certify_grid = log_spaced(1e-2, 1e3, 2000);
  struct Entry {
    const char* name;
    std::function<double(double)> v;
    std::function<double(double)> dv;
  };
  const std::vector<Entry> entries{
      {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }},
      {"repulsive 1/<r>^2", [](double r) { return 1.0 / (1.0 + r * r); },
       [](double r) { return -2.0 * r / std::pow(1.0 + r * r, 2); }},
      {"shallow well -0.2/<r>^2", [](double r) { return -0.2 / (1.0 + r * r); },
       [](double r) { return 0.4 * r / std::pow(1.0 + r * r, 2); }},
  };

  std::ostringstream os;
  bool ok = true;
  for (const Entry& e : entries) {
    const auto trio = check_potential_H({e.v, e.dv}, 3, certify_grid);
    std::vector<double> samples(grid.size());
    for (int i = 0; i < grid.size(); ++i) samples[i] = e.v(grid.node(i));
    const double e0 = smallest_eigenvalue(assemble_from_v(samples, grid, 3));
    const bool certified = trio[0].passed && trio[1].passed && trio[2].passed;
    ok = ok && certified && e0 >= -1e-8;
    os << e.name << ": certified=" << certified << ", e0 = " << e0 << "; ";
  }

  // deliberate violation: -5/<r>^2 fails the positivity hypothesis at large r
  std::vector<double> well(grid.size());
  for (int i = 0; i < grid.size(); ++i) well[i] = -5.0 / (1.0 + grid.node(i) * grid.node(i));
  const auto trio = check_potential_H(
      {[](double r) { return -5.0 / (1.0 + r * r); },
       [](double r) { return 10.0 * r / std::pow(1.0 + r * r, 2); }},
      3, certify_grid);
  const DiscreteOperator op = assemble_from_v(well, grid, 3);
  const double e0 = smallest_eigenvalue(op);
  const std::vector<double> lambdas{e0};
  const ResolventSweep sweep = resolvent_sweep(op, lambdas, std::vector<double>{0.5, 0.1, 0.02});
  const bool violator_ok = !trio[1].passed && e0 < -1e-3 && sweep.blowup_lambdas.size() == 1;
  os << "deep well: H2 passed=" << trio[1].passed << ", e0 = " << e0
     << ", blow-up flagged=" << (sweep.blowup_lambdas.size() == 1);
  detail = os.str();
  return ok && violator_ok;
}

// ---------------------------------------------------------------- criterion 9
bool c9_quotient_boundedness(std::string& detail) {
  QuotientSweepParams params;
  params.c0_shift = 1.0;  // hyperbolic n = 3: Q - 1 = 0 exactly
  const QuotientSweepResult res =
      strichartz_quotient_sweep(WarpProfile::hyperbolic(1.0), 3, pair_from_q(6.0, 3.0), true,
                                standard_datum_family(), params);
  std::ostringstream os;
  os << "quotients in [" << res.min_quotient << ", " << res.max_quotient << "], spread "
     << res.max_quotient / res.min_quotient << " (<= 5), excluded runs " << res.excluded.size()
     << " (need 0)";
  detail = os.str();
  return res.excluded.empty() && res.max_quotient / res.min_quotient <= 5.0;
}

// --------------------------------------------------------------- criterion 10
bool c10_exponent_arithmetic(std::string& detail) {
  const ScatteringWindow w = scattering_window(3, 7.0);
  bool ok = (w.p_low == 4.0 / 7.0) && (w.p_high == 4.0);

  std::mt19937 gen(23);
  std::uniform_real_distribution<double> dim_dist(2.5, 12.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double dim = dim_dist(gen);
    std::uniform_real_distribution<double> q_dist(2.0, 2.0 * dim / (dim - 2.0));
    const AdmissiblePair pair = pair_from_q(q_dist(gen), dim);
    const double invp = std::isinf(pair.p) ? 0.0 : 1.0 / pair.p;
    worst = std::max(worst, std::abs(2.0 * invp + pair.dim / pair.q - pair.dim / 2.0));
  }
  std::ostringstream os;
  os << "window(3,7) = (" << w.p_low << ", " << w.p_high
     << ") exact; worst admissibility defect " << worst << " (<= 1e-12)";
  detail = os.str();
  return ok && worst <= 1e-12;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"C1 transform-equivalence order", c1_transform_equivalence},
      {"C2 closed-form power-law potential", c2_closed_form_potential},
      {"C3 hypothesis certification", c3_hypothesis_certification},
      {"C4 duality identity", c4_duality_identity},
      {"C5 dispersive decay exponents", c5_dispersive_decay},
      {"C6 mass conservation", c6_conservation},
      {"C7 resolvent bound surrogate", c7_resolvent_surrogate},
      {"C8 positivity and the deliberate violator", c8_h2_positivity},
      {"C9 weighted Strichartz quotient spread", c9_quotient_boundedness},
      {"C10 exponent arithmetic", c10_exponent_arithmetic},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s — %s [%.1fs] %s\n", ok ? "PASS" : "FAIL", c.name.c_str(), secs,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
