#include "warplab/cli.hpp"
#include "warplab/config.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace warplab;

namespace {

const char* kSolveConfig = R"(
[profile]
kind = euclidean

[space]
n = 3
r_max = 20.0
points = 256

[time]
horizon = 0.5
snapshots = 16

[initial]
type = gaussian
width = 1.0
center = 6.0

[output]
path = out.csv
seed = 7
)";

Config solve_config() { return parse_config(kSolveConfig); }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("config round-trips losslessly through its text form") {
  const Config cfg = solve_config();
  const std::string canonical = serialize_config(cfg);
  const Config again = parse_config(canonical);
  CHECK(again == cfg);
  CHECK(serialize_config(again) == canonical);
  CHECK(config_hash(again) == config_hash(cfg));
}

TEST_CASE("config accessors and validation") {
  const Config cfg = solve_config();
  CHECK(cfg.number("space", "r_max") == 20.0);
  CHECK(cfg.integer("space", "points") == 256);
  CHECK(cfg.get("profile", "kind") == "euclidean");
  CHECK(cfg.number_or("time", "dt", 0.25) == 0.25);
  CHECK_THROWS_AS(cfg.get("profile", "missing"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[a]\nx = 1\nx = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("key = outside\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[unterminated\n"), std::invalid_argument);
}

TEST_CASE("profiles from config") {
  Config cfg = solve_config();
  CHECK(profile_from_config(cfg).kind() == ProfileKind::Euclidean);
  cfg.set("profile", "kind", "hyperbolic");
  cfg.set("profile", "alpha", "2.0");
  CHECK(profile_from_config(cfg).kind() == ProfileKind::Hyperbolic);
  cfg.set("profile", "kind", "odd_polynomial");
  cfg.set("profile", "coeffs", "1.0 0.5");
  CHECK(profile_from_config(cfg).poly_coeffs().size() == 2);
  cfg.set("profile", "kind", "custom");
  CHECK_THROWS_AS(profile_from_config(cfg), std::invalid_argument);
}

TEST_CASE("built-in profiles round-trip through the config format") {
  for (const WarpProfile& profile :
       {WarpProfile::euclidean(), WarpProfile::hyperbolic(1.75),
        WarpProfile::odd_polynomial({0.25, 0.125}), WarpProfile::power_law(2.5)}) {
    Config cfg;
    profile_to_config(profile, cfg);
    const WarpProfile back = profile_from_config(cfg);
    CHECK(back.kind() == profile.kind());
    for (double r : {0.3, 1.0, 7.7})
      for (int order = 0; order <= 3; ++order)
        CHECK(back.eval(r, order) == profile.eval(r, order));
  }
  Config cfg;
  const WarpProfile custom = WarpProfile::custom(
      [](double r) { return std::sinh(r); }, [](double r) { return std::cosh(r); },
      [](double r) { return std::sinh(r); }, [](double r) { return std::cosh(r); }, 1.0);
  CHECK_THROWS_AS(profile_to_config(custom, cfg), std::invalid_argument);
}

TEST_CASE("solve command is deterministic and conserves the mass column") {
  const Config cfg = solve_config();
  std::ostringstream csv1, diag1, csv2, diag2, err;
  REQUIRE(run_solve(cfg, csv1, diag1, err) == kExitOk);
  REQUIRE(run_solve(cfg, csv2, diag2, err) == kExitOk);
  CHECK(csv1.str() == csv2.str());    // byte-identical reruns
  CHECK(diag1.str() == diag2.str());
  CHECK(csv1.str().find("# warplab solve config=") == 0);

  // the diagnostics mass column stays constant to 1e-10
  std::istringstream diag(diag1.str());
  std::string line;
  std::getline(diag, line);  // banner
  std::getline(diag, line);  // header
  double mass_min = 1e300, mass_max = -1e300;
  while (std::getline(diag, line)) {
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    const double mass = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    mass_min = std::min(mass_min, mass);
    mass_max = std::max(mass_max, mass);
  }
  CHECK(mass_max - mass_min <= 1e-10 * mass_max);
}

TEST_CASE("dimension below 3 is an input error") {
  Config cfg = solve_config();
  cfg.set("space", "n", "2");
  std::ostringstream csv, diag, err;
  CHECK(run_solve(cfg, csv, diag, err) == kExitInputError);
  CHECK(err.str().find("at least 3") != std::string::npos);
}

TEST_CASE("check command exit codes") {
  Config cfg = solve_config();
  cfg.set("profile", "kind", "odd_polynomial");
  cfg.set("profile", "coeffs", "1.0");
  cfg.set("check", "theorem", "poly");
  std::ostringstream out, err;
  CHECK(run_check(cfg, out, err) == kExitOk);
  CHECK(out.str().find("\"all_passed\": true") != std::string::npos);
  CHECK(out.str().find("neg_curv_poly") != std::string::npos);

  Config euc = solve_config();
  euc.set("check", "theorem", "exp");
  std::ostringstream out2, err2;
  CHECK(run_check(euc, out2, err2) == kExitHypothesisFail);

  Config bad = solve_config();
  bad.set("check", "theorem", "nonsense");
  std::ostringstream out3, err3;
  CHECK(run_check(bad, out3, err3) == kExitInputError);
}

TEST_CASE("every check theorem selector is wired") {
  Config hyp = solve_config();
  hyp.set("profile", "kind", "hyperbolic");
  hyp.set("profile", "alpha", "1.0");
  hyp.set("check", "r_max", "200.0");
  hyp.set("check", "fit_lo", "20.0");
  hyp.set("check", "fit_hi", "200.0");

  auto run_with = [&](Config cfg, const std::string& theorem) {
    cfg.set("check", "theorem", theorem);
    std::ostringstream out, err;
    const int code = run_check(cfg, out, err);
    INFO(theorem, ": ", err.str());
    return std::pair{code, out.str()};
  };

  CHECK(run_with(hyp, "local").first == kExitOk);
  {
    Config tau = hyp;
    tau.set("check", "c0", "1.0");
    const auto [code, text] = run_with(tau, "tau");
    CHECK(code == kExitOk);
    CHECK(text.find("tau_shifted_h3") != std::string::npos);
  }
  {
    Config pot = hyp;
    pot.set("check", "c0", "1.0");
    CHECK(run_with(pot, "potential").first == kExitOk);
  }
  {
    Config i1 = hyp;
    i1.set("check", "d", "10.0");
    CHECK(run_with(i1, "i1").first == kExitOk);
  }
  {
    Config i1bad = hyp;
    i1bad.set("check", "d", "2.0");  // needs d > n
    CHECK(run_with(i1bad, "i1").first == kExitInputError);
  }
}

TEST_CASE("describe labels the model regimes") {
  Config hyp = solve_config();
  hyp.set("profile", "kind", "hyperbolic");
  hyp.set("profile", "alpha", "1.0");
  std::ostringstream out, err;
  REQUIRE(run_describe(hyp, out, err) == kExitOk);
  CHECK(out.str().find("exponential") != std::string::npos);

  Config poly = solve_config();
  poly.set("profile", "kind", "odd_polynomial");
  poly.set("profile", "coeffs", "1.0");
  std::ostringstream out2, err2;
  REQUIRE(run_describe(poly, out2, err2) == kExitOk);
  CHECK(out2.str().find("polynomial") != std::string::npos);
  CHECK(out2.str().find("N = 7") != std::string::npos);
}

TEST_CASE("norms command emits one row per exponent") {
  Config cfg = solve_config();
  cfg.set("initial", "center", "0.0");
  cfg.set("time", "horizon", "1.0");
  cfg.set("time", "snapshots", "40");
  cfg.set("norms", "q", "2 6");
  cfg.set("norms", "weighted", "false");
  std::ostringstream csv, err;
  REQUIRE(run_norms(cfg, csv, err) == kExitOk);
  const std::string text = csv.str();
  CHECK(text.find("profile,n,p,q,weighted,T,value,quotient") != std::string::npos);
  int rows = 0;
  for (char c : text)
    if (c == '\n') ++rows;
  CHECK(rows == 4);  // banner + header + 2 data rows
}

TEST_CASE("resolvent command writes converged samples") {
  Config cfg = solve_config();
  cfg.set("space", "points", "200");
  cfg.set("resolvent", "lambda_min", "-1");
  cfg.set("resolvent", "lambda_max", "5");
  cfg.set("resolvent", "lambda_count", "4");
  cfg.set("resolvent", "eps", "0.5 0.1");
  std::ostringstream csv, err;
  REQUIRE(run_resolvent(cfg, csv, err) == kExitOk);
  std::istringstream is(csv.str());
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  CHECK(line == "lambda,eps,norm,scaled,converged");
  int rows = 0;
  double max_scaled = 0.0;
  while (std::getline(is, line)) {
    ++rows;
    const std::size_t last = line.rfind(',');
    CHECK(line.substr(last + 1) == "1");
    const std::size_t prev = line.rfind(',', last - 1);
    max_scaled = std::max(max_scaled, std::stod(line.substr(prev + 1, last - prev - 1)));
  }
  CHECK(rows == 8);
  CHECK(max_scaled < 100.0);  // bounded scaled column on the free operator
}

TEST_CASE("scatter command reports the residual series") {
  Config cfg = solve_config();
  cfg.set("initial", "center", "6.0");
  cfg.set("initial", "width", "1.0");
  cfg.set("time", "horizon", "0.5");
  cfg.set("time", "snapshots", "16");
  cfg.set("scatter", "power", "2.0");
  cfg.set("scatter", "sign", "defocusing");
  std::ostringstream csv, err;
  REQUIRE(run_scatter(cfg, csv, err) == kExitOk);
  CHECK(csv.str().find("t,residual,mass") != std::string::npos);
}

TEST_SUITE_END();
