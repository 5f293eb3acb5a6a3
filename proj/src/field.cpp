#include "warplab/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace warplab {

namespace {

// log of the conversion weight into the half-line representation; staying in
// log space keeps exponentially growing profiles (tau ~ e^{beta r}) from
// overflowing where the field itself is zero or tiny.
double log_weight_to_w(Representation rep, const WarpProfile& profile, int n, double r) {
  const double beta = 0.5 * (n - 1);
  switch (rep) {
    case Representation::UOnM: return beta * profile.log_phi(r);
    case Representation::VOnRn: return beta * std::log(r);
    case Representation::WHalfline: return 0.0;
  }
  return 0.0;
}

}  // namespace

double rep_weight_to_w(Representation rep, const WarpProfile& profile, int n, double r) {
  return std::exp(log_weight_to_w(rep, profile, n, r));
}

RadialField transform(const RadialField& field, Representation target, const WarpProfile& profile) {
  if (field.rep == target) return field;
  RadialField out = field;
  out.rep = target;
  const int n = field.dim_n;
  for (int i = 0; i < field.grid.size(); ++i) {
    if (field.values[i] == std::complex<double>(0.0)) {
      out.values[i] = 0.0;
      continue;
    }
    const double r = field.grid.node(i);
    const double log_factor =
        log_weight_to_w(field.rep, profile, n, r) - log_weight_to_w(target, profile, n, r);
    out.values[i] = field.values[i] * std::exp(log_factor);
  }
  return out;
}

double field_mass(const RadialField& field, const WarpProfile& profile) {
  // ||u||_L2(M)^2 = omega_{n-1} int |u|^2 phi^(n-1) dr = omega_{n-1} int |w|^2 dr,
  // trapezoid with both walls at zero, which collapses to a plain node sum.
  const int n = field.dim_n;
  const double omega = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  double acc = 0.0;
  for (int i = 0; i < field.grid.size(); ++i) {
    const double a = std::abs(field.values[i]);
    if (a == 0.0) continue;
    const double r = field.grid.node(i);
    const double w = std::exp(std::log(a) + log_weight_to_w(field.rep, profile, n, r));
    acc += w * w;
  }
  return std::sqrt(omega * acc * field.grid.spacing());
}

}  // namespace warplab
