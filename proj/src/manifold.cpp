#include "warplab/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace warplab {

namespace {

void require_dim(int n) {
  if (n < 3) throw std::invalid_argument("dimension n must be at least 3");
}

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive (origin values are limits)");
}

}  // namespace

CurvaturePoint curvature(const WarpProfile& profile, int n, double r) {
  require_dim(n);
  require_positive_radius(r);
  CurvaturePoint c;
  c.r = r;
  c.sec_rad = -profile.ratio2(r);
  // -((phi')^2 - 1)/phi^2 = -[(phi'/phi)^2 - 1/r^2] - (1/r^2 - 1/phi^2);
  // the first bracket is the cancellation-safe gap, the second is benign.
  const double phi = profile.eval(r, 0);
  c.sec_tan = -centrifugal_gap(profile, r) - (1.0 / (r * r) - 1.0 / (phi * phi));
  c.ricci_rad = (n - 1) * c.sec_rad;
  c.ricci_tan = c.sec_rad + (n - 2) * c.sec_tan;
  c.scalar = 2.0 * (n - 1) * c.sec_rad + (n - 1) * (n - 2) * c.sec_tan;
  return c;
}

TauSigma tau_sigma(const WarpProfile& profile, int n, double r) {
  require_dim(n);
  require_positive_radius(r);
  const double beta = 0.5 * (n - 1);
  const double phi = profile.eval(r, 0);
  const double dphi = profile.eval(r, 1);
  const double d2phi = profile.eval(r, 2);
  TauSigma t;
  t.tau = std::pow(phi, beta);
  t.tau_p = beta * std::pow(phi, beta - 1.0) * dphi;
  t.tau_pp = beta * (beta - 1.0) * std::pow(phi, beta - 2.0) * dphi * dphi +
             beta * std::pow(phi, beta - 1.0) * d2phi;
  t.sigma = std::pow(r / phi, beta);
  return t;
}

double sigma_weight(const WarpProfile& profile, int n, double r) {
  require_dim(n);
  if (r == 0.0) return 1.0;  // limit value, phi ~ r at 0
  return std::pow(r / profile.eval(r, 0), 0.5 * (n - 1));
}

double volume_weight(const WarpProfile& profile, int n, double r) {
  require_dim(n);
  return std::pow(profile.eval(r, 0), n - 1);
}

double series_switch_radius(const WarpProfile& profile) { return 1e-3 * profile.scale(); }

double centrifugal_gap(const WarpProfile& profile, double r) {
  const double a = profile.ratio1(r);
  const double b = 1.0 / r;
  if (r <= profile.scale()) {
    // (phi'/phi - 1/r) = (r phi' - phi)/(r phi): the subtraction happens
    // between nearly equal O(r) quantities whose difference is O(r^3), so it
    // is done on the raw values where it is benign in absolute terms.
    const double phi = profile.eval(r, 0);
    const double diff = (r * profile.eval(r, 1) - phi) / (r * phi);
    return diff * (a + b);
  }
  return (a - b) * (a + b);
}

namespace {

struct Pieces {
  double d2_over_phi;  // phi''/phi
  double gap;          // (phi'/phi)^2 - 1/r^2
};

Pieces potential_pieces(const WarpProfile& profile, double r) {
  if (profile.smooth_at_origin() && r < series_switch_radius(profile)) {
    const double p3 = profile.phi3_at_0();
    const double p5 = profile.phi5_at_0();
    const double r2 = r * r;
    if (std::isnan(p5)) return {p3, (2.0 / 3.0) * p3};
    return {p3 + (p5 - p3 * p3) * r2 / 6.0, (2.0 / 3.0) * p3 + p5 * r2 / 15.0};
  }
  return {profile.ratio2(r), centrifugal_gap(profile, r)};
}

}  // namespace

double potential_v(const WarpProfile& profile, int n, double r) {
  require_dim(n);
  require_positive_radius(r);
  const double beta = 0.5 * (n - 1);
  const auto [d2, gap] = potential_pieces(profile, r);
  return beta * d2 + beta * (beta - 1.0) * gap;
}

double potential_q(const WarpProfile& profile, int n, double r) {
  const double cfug = (n - 1) * (n - 3) / 4.0 / (r * r);
  return potential_v(profile, n, r) + cfug;
}

double potential_q_prime(const WarpProfile& profile, int n, double r) {
  require_dim(n);
  require_positive_radius(r);
  const double beta = 0.5 * (n - 1);
  if (profile.smooth_at_origin() && r < series_switch_radius(profile)) {
    // Q' = V' + d/dr[(n-1)(n-3)/4r^2], with V' from the series (0 when the
    // fifth derivative is unknown and the series is first order).
    const double p3 = profile.phi3_at_0();
    const double p5 = profile.phi5_at_0();
    const double cfug3 = (n - 1) * (n - 3) / 2.0 / (r * r * r);
    if (std::isnan(p5)) return -cfug3;
    const double k2 = beta * (p5 - p3 * p3) / 6.0 + beta * (beta - 1.0) * p5 / 15.0;
    return 2.0 * k2 * r - cfug3;
  }
  const double a1 = profile.ratio1(r);
  const double a2 = profile.ratio2(r);
  const double a3 = profile.ratio3(r);
  // Q = beta phi''/phi + beta(beta-1)(phi'/phi)^2
  return beta * (a3 - a1 * a2) + 2.0 * beta * (beta - 1.0) * a1 * (a2 - a1 * a1);
}

double potential_v_prime(const WarpProfile& profile, int n, double r) {
  const double cfug3 = (n - 1) * (n - 3) / 2.0 / (r * r * r);
  return potential_q_prime(profile, n, r) + cfug3;
}

EffectivePotential make_potential(const WarpProfile& profile, int n, const Grid& grid, double c0) {
  require_dim(n);
  EffectivePotential pot;
  pot.grid = grid;
  pot.c0 = c0;
  pot.dim_n = n;
  pot.q_values.resize(grid.size());
  pot.v_values.resize(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    const double v = potential_v(profile, n, r);
    pot.v_values[i] = v;
    pot.q_values[i] = v + (n - 1) * (n - 3) / 4.0 / (r * r);
  }
  return pot;
}

}  // namespace warplab
