#include "warplab/cli.hpp"

#include "warplab/exponents.hpp"
#include "warplab/hypotheses.hpp"
#include "warplab/norms.hpp"
#include "warplab/resolvent.hpp"
#include "warplab/solver.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace warplab {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void csv_banner(std::ostream& os, const char* command, const Config& cfg) {
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  os << "# warplab " << command << " config=" << hex << " seed="
     << cfg.integer_or("output", "seed", static_cast<int>(kResolventSeed)) << "\n";
}

int dimension_from(const Config& cfg) {
  const int n = cfg.integer("space", "n");
  if (n < 3) throw std::invalid_argument("dimension n must be at least 3");
  return n;
}

Grid grid_from(const Config& cfg) {
  return Grid(cfg.number("space", "r_max"), cfg.integer("space", "points"));
}

RadialField initial_from(const Config& cfg, const Grid& grid, int n) {
  const std::string type = cfg.get_or("initial", "type", "gaussian");
  if (type != "gaussian") throw std::invalid_argument("unknown initial datum type '" + type + "'");
  RadialField u = make_gaussian_u(grid, n, cfg.number_or("initial", "width", 1.0),
                                  cfg.number_or("initial", "center", 0.0),
                                  cfg.number_or("initial", "modulation", 0.0));
  const std::string rep = cfg.get_or("initial", "representation", "u");
  if (rep == "v")
    u.rep = Representation::VOnRn;
  else if (rep == "w")
    u.rep = Representation::WHalfline;
  else if (rep != "u")
    throw std::invalid_argument("initial representation must be one of u, v, w");
  return u;
}

std::vector<double> snapshot_times_from(const Config& cfg, double T) {
  const int count = cfg.integer_or("time", "snapshots", 64);
  if (count < 1) throw std::invalid_argument("need at least one snapshot");
  std::vector<double> times(count + 1);
  for (int i = 0; i <= count; ++i) times[i] = T * i / count;
  return times;
}

json report_to_json(const HypothesisReport& rep) {
  json j;
  j["condition"] = condition_name(rep.condition);
  j["passed"] = rep.passed;
  j["worst_margin"] = rep.worst_margin;
  j["worst_r"] = rep.worst_r;
  j["grid_range"] = {rep.grid_range.first, rep.grid_range.second};
  j["extracted"] = json::object();
  for (const auto& [k, v] : rep.extracted) j["extracted"][k] = v;
  j["caveat"] = rep.caveat;
  return j;
}

struct RegimeGuess {
  std::string name = "undetermined";
  double rms_poly = 0.0, rms_exp = 0.0;
  double m = 0.0, N = 0.0, alpha = 0.0, A = 0.0;
};

RegimeGuess guess_regime(const WarpProfile& profile, int n) {
  RegimeGuess g;
  const std::vector<double> grid = log_spaced(1.0, 200.0, 1200);
  const std::pair<double, double> window{20.0, 200.0};
  try {
    const auto [curv, poly] = check_poly_theorem(profile, n, grid, window);
    const auto [ecurv, expb] = check_exp_theorem(profile, n, grid, window);
    const double rp = 1e-2 - poly.worst_margin;   // recover fit rms from the margin
    const double re = expb.passed || expb.worst_margin <= 1e-2 ? 1e-2 - expb.worst_margin : 1e9;
    g.rms_poly = rp;
    g.rms_exp = re;
    if (poly.passed && (!expb.passed || rp <= re)) {
      g.name = "polynomial";
      g.m = poly.extracted.at("m");
      g.N = poly.extracted.count("N") ? poly.extracted.at("N") : 0.0;
    } else if (expb.passed) {
      g.name = "exponential";
      g.alpha = expb.extracted.at("alpha");
      g.A = expb.extracted.at("A");
    }
  } catch (const std::exception&) {
    g.name = "undetermined";
  }
  return g;
}

}  // namespace

int run_describe(const Config& cfg, std::ostream& out, std::ostream& err) {
  try {
    const WarpProfile profile = profile_from_config(cfg);
    const int n = dimension_from(cfg);
    out << "profile: " << profile.describe() << "\n";
    out << "n = " << n << "\n";

    const RegimeGuess g = guess_regime(profile, n);
    auto round3 = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3g", v);
      return std::string(buf);
    };
    out << "regime guess: " << g.name;
    if (g.name == "polynomial") out << " (m = " << round3(g.m) << ", N = " << round3(g.N) << ")";
    if (g.name == "exponential")
      out << " (alpha = " << round3(g.alpha) << ", A = " << round3(g.A) << ")";
    out << "\n\n";

    const std::vector<double> rows = log_spaced(0.1, 50.0, 8);
    out << "curvature:\n";
    out << std::setw(12) << "r" << std::setw(14) << "sec_rad" << std::setw(14) << "sec_tan"
        << std::setw(14) << "ricci_rad" << std::setw(14) << "ricci_tan" << std::setw(14)
        << "scalar" << "\n";
    for (double r : rows) {
      const CurvaturePoint c = curvature(profile, n, r);
      out << std::setw(12) << std::setprecision(4) << r << std::setw(14) << c.sec_rad
          << std::setw(14) << c.sec_tan << std::setw(14) << c.ricci_rad << std::setw(14)
          << c.ricci_tan << std::setw(14) << c.scalar << "\n";
    }
    out << "\npotentials and weights:\n";
    out << std::setw(12) << "r" << std::setw(14) << "V" << std::setw(14) << "Q" << std::setw(14)
        << "sigma" << std::setw(14) << "tau" << "\n";
    for (double r : rows) {
      const TauSigma ts = tau_sigma(profile, n, r);
      out << std::setw(12) << std::setprecision(4) << r << std::setw(14)
          << potential_v(profile, n, r) << std::setw(14) << potential_q(profile, n, r)
          << std::setw(14) << ts.sigma << std::setw(14) << ts.tau << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "describe: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  try {
    const WarpProfile profile = profile_from_config(cfg);
    const int n = dimension_from(cfg);
    const std::string theorem = cfg.get("check", "theorem");
    const double r_min = cfg.number_or("check", "r_min", 1e-2);
    const double r_max = cfg.number_or("check", "r_max", 1e3);
    const int points = cfg.integer_or("check", "points", 4000);
    const std::pair<double, double> window{cfg.number_or("check", "fit_lo", r_max / 10.0),
                                           cfg.number_or("check", "fit_hi", r_max)};

    std::vector<HypothesisReport> reports;
    if (theorem == "local") {
      reports.push_back(check_local(profile, n, log_spaced(1.0, r_max, points)));
    } else if (theorem == "poly") {
      const auto [curv, poly] = check_poly_theorem(profile, n, log_spaced(r_min, r_max, points), window);
      reports.push_back(curv);
      reports.push_back(poly);
    } else if (theorem == "exp") {
      const auto [curv, behav] =
          check_exp_theorem(profile, n, log_spaced(r_min, r_max, points), window);
      reports.push_back(curv);
      reports.push_back(behav);
    } else if (theorem == "tau") {
      const double c0 = cfg.number_or("check", "c0", 0.0);
      const auto trio = check_tau_conditions(profile, n, c0, log_spaced(r_min, r_max, points),
                                             log_spaced(r_min, r_max, 64));
      for (const auto& r : trio) reports.push_back(r);
    } else if (theorem == "potential") {
      const double c0 = cfg.number_or("check", "c0", 0.0);
      const auto trio =
          check_potential_H(potential_from_profile(profile, n, c0), n, log_spaced(r_min, r_max, points));
      for (const auto& r : trio) reports.push_back(r);
    } else if (theorem == "i1") {
      reports.push_back(check_integrability_I1(profile, n, cfg.number("check", "d"), r_max));
    } else {
      throw std::invalid_argument("unknown theorem '" + theorem +
                                  "' (expected local|poly|exp|tau|potential|i1)");
    }

    bool all = true;
    json jreports = json::array();
    for (const HypothesisReport& r : reports) {
      all = all && r.passed;
      jreports.push_back(report_to_json(r));
    }
    json doc;
    doc["profile"] = profile.describe();
    doc["n"] = n;
    doc["theorem"] = theorem;
    doc["all_passed"] = all;
    doc["reports"] = jreports;
    out << doc.dump(2) << "\n";
    return all ? kExitOk : kExitHypothesisFail;
  } catch (const std::invalid_argument& e) {
    err << "check: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_solve(const Config& cfg, std::ostream& csv, std::ostream& diag_csv, std::ostream& err) {
  try {
    const WarpProfile profile = profile_from_config(cfg);
    const int n = dimension_from(cfg);
    const Grid grid = grid_from(cfg);
    const RadialField u0 = initial_from(cfg, grid, n);
    const double T = cfg.number("time", "horizon");
    SolveOptions opts;
    opts.dt = cfg.number_or("time", "dt", 0.0);
    opts.c0_shift = cfg.number_or("time", "c0_shift", 0.0);

    const Trajectory traj =
        solve_linear(profile, n, u0, nullptr, T, snapshot_times_from(cfg, T), opts);

    csv_banner(csv, "solve", cfg);
    csv << "t,r,re,im\n";
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s)
      for (int i = 0; i < grid.size(); ++i)
        csv << fmt(traj.times[s]) << ',' << fmt(grid.node(i)) << ','
            << fmt(traj.snapshots[s].values[i].real()) << ','
            << fmt(traj.snapshots[s].values[i].imag()) << "\n";

    csv_banner(diag_csv, "solve-diagnostics", cfg);
    diag_csv << "t,mass,boundary_fraction\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s)
      diag_csv << fmt(traj.times[s]) << ',' << fmt(traj.diagnostics.mass_series[s]) << ','
               << fmt(traj.diagnostics.boundary_mass_series[s]) << "\n";
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "solve: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_norms(const Config& cfg, std::ostream& csv, std::ostream& err) {
  try {
    const WarpProfile profile = profile_from_config(cfg);
    const int n = dimension_from(cfg);
    const Grid grid = grid_from(cfg);
    const RadialField u0 = initial_from(cfg, grid, n);
    const double T = cfg.number("time", "horizon");
    const std::vector<double> qs = cfg.number_list("norms", "q");
    const bool weighted = cfg.flag_or("norms", "weighted", false);
    const double dim = cfg.number_or("norms", "dim", static_cast<double>(n));

    SolveOptions opts;
    opts.c0_shift = cfg.number_or("time", "c0_shift", 0.0);
    const Trajectory traj =
        solve_linear(profile, n, u0, nullptr, T, snapshot_times_from(cfg, T), opts);

    csv_banner(csv, "norms", cfg);
    csv << "profile,n,p,q,weighted,T,value,quotient\n";
    for (double q : qs) {
      const AdmissiblePair pair = pair_from_q(q, dim);
      const NormReport rep = spacetime_norm(traj, pair, weighted);
      csv << '"' << profile.describe() << '"' << ',' << n << ',' << fmt(pair.p) << ',' << fmt(q)
          << ',' << (weighted ? 1 : 0) << ',' << fmt(T) << ',' << fmt(rep.value) << ','
          << fmt(rep.quotient) << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "norms: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_resolvent(const Config& cfg, std::ostream& csv, std::ostream& err) {
  try {
    const WarpProfile profile = profile_from_config(cfg);
    const int n = dimension_from(cfg);
    const Grid grid = grid_from(cfg);
    const double c0 = cfg.number_or("resolvent", "c0", 0.0);
    const double lam_lo = cfg.number("resolvent", "lambda_min");
    const double lam_hi = cfg.number("resolvent", "lambda_max");
    const int lam_count = cfg.integer("resolvent", "lambda_count");
    if (lam_count < 1 || lam_hi < lam_lo) throw std::invalid_argument("bad lambda grid");
    const std::vector<double> eps = cfg.number_list("resolvent", "eps");

    EffectivePotential pot = make_potential(profile, n, grid, c0);
    for (double& q : pot.q_values) q -= c0;
    const DiscreteOperator op = assemble(pot);

    std::vector<double> lambdas(lam_count);
    for (int i = 0; i < lam_count; ++i)
      lambdas[i] = lam_count == 1 ? lam_lo : lam_lo + (lam_hi - lam_lo) * i / (lam_count - 1);

    const ResolventSweep sweep = resolvent_sweep(op, lambdas, eps);

    csv_banner(csv, "resolvent", cfg);
    csv << "lambda,eps,norm,scaled,converged\n";
    for (const ResolventSample& s : sweep.samples)
      csv << fmt(s.lambda) << ',' << fmt(s.eps) << ',' << fmt(s.norm) << ',' << fmt(s.scaled)
          << ',' << (s.converged ? 1 : 0) << "\n";

    if (sweep.non_converged > 0) {
      err << "resolvent: " << sweep.non_converged << " samples did not converge\n";
      return kExitNonConvergence;
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "resolvent: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_scatter(const Config& cfg, std::ostream& csv, std::ostream& err) {
  try {
    const WarpProfile profile = profile_from_config(cfg);
    const int n = dimension_from(cfg);
    const Grid grid = grid_from(cfg);
    const RadialField u0 = initial_from(cfg, grid, n);
    const double T = cfg.number("time", "horizon");
    const double power = cfg.number("scatter", "power");
    const std::string sign_str = cfg.get_or("scatter", "sign", "defocusing");
    NlsSign sign;
    if (sign_str == "focusing" || sign_str == "+1")
      sign = NlsSign::Focusing;
    else if (sign_str == "defocusing" || sign_str == "-1")
      sign = NlsSign::Defocusing;
    else
      throw std::invalid_argument("scatter sign must be focusing or defocusing");

    const Trajectory traj =
        solve_nls(profile, n, u0, power, sign, T, snapshot_times_from(cfg, T));
    const std::vector<double> residual = scattering_residual(traj);

    csv_banner(csv, "scatter", cfg);
    csv << "t,residual,mass\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s)
      csv << fmt(traj.times[s]) << ',' << fmt(residual[s]) << ','
          << fmt(traj.diagnostics.mass_series[s]) << "\n";
    return kExitOk;
  } catch (const BlowupError& e) {
    err << "scatter: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "scatter: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace warplab
