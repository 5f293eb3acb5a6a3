#include "warplab/warp_profile.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace warplab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

WarpProfile WarpProfile::euclidean() {
  WarpProfile p;
  p.kind_ = ProfileKind::Euclidean;
  p.phi3_0_ = 0.0;
  p.phi5_0_ = 0.0;
  return p;
}

WarpProfile WarpProfile::hyperbolic(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("hyperbolic profile needs alpha > 0");
  WarpProfile p;
  p.kind_ = ProfileKind::Hyperbolic;
  p.alpha_ = alpha;
  // phi = sinh(alpha r)/alpha keeps phi'(0) = 1 for every alpha.
  p.phi3_0_ = alpha * alpha;
  p.phi5_0_ = alpha * alpha * alpha * alpha;
  p.scale_ = 1.0 / alpha;
  return p;
}

WarpProfile WarpProfile::odd_polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("odd_polynomial needs at least one coefficient");
  for (double a : coeffs)
    if (!(a > 0.0)) throw std::invalid_argument("odd_polynomial coefficients must be positive");
  WarpProfile p;
  p.kind_ = ProfileKind::OddPolynomial;
  p.coeffs_ = std::move(coeffs);
  p.phi3_0_ = 6.0 * p.coeffs_[0];
  p.phi5_0_ = p.coeffs_.size() > 1 ? 120.0 * p.coeffs_[1] : 0.0;
  return p;
}

WarpProfile WarpProfile::power_law(double exponent) {
  if (!(exponent > 0.0)) throw std::invalid_argument("power_law needs exponent > 0");
  WarpProfile p;
  p.kind_ = ProfileKind::PowerLaw;
  p.m_ = exponent;
  p.phi3_0_ = exponent == 1.0 ? 0.0 : kNaN;
  p.phi5_0_ = p.phi3_0_;
  return p;
}

WarpProfile WarpProfile::custom(Evaluator phi, Evaluator dphi, Evaluator d2phi, Evaluator d3phi,
                                double phi3_at_0, double scale) {
  if (!phi || !dphi || !d2phi || !d3phi)
    throw std::invalid_argument("custom profile: all four derivative evaluators are required");
  if (!(scale > 0.0)) throw std::invalid_argument("custom profile: scale must be positive");
  WarpProfile p;
  p.kind_ = ProfileKind::Custom;
  p.f0_ = std::move(phi);
  p.f1_ = std::move(dphi);
  p.f2_ = std::move(d2phi);
  p.f3_ = std::move(d3phi);
  p.phi3_0_ = phi3_at_0;
  p.phi5_0_ = kNaN;
  p.scale_ = scale;
  p.validate_custom();
  return p;
}

void WarpProfile::validate_custom() const {
  const double s = scale_;
  if (std::abs(f0_(0.0)) > 1e-12 * s)
    throw std::invalid_argument("custom profile: phi(0) must vanish");
  if (std::abs(f1_(0.0) - 1.0) > 1e-12)
    throw std::invalid_argument("custom profile: phi'(0) must equal 1");

  // Even-derivative checks at the origin (orders 2 and 4; higher orders are
  // not probed).  Order 4 uses a one-sided second difference of the supplied
  // phi'' at h and 2h, Richardson-extrapolated to kill the O(h) term.
  if (std::abs(f2_(0.0)) > 1e-6 / s)
    throw std::invalid_argument("custom profile: phi''(0) must vanish");
  const double h = 5e-3 * s;
  auto d2_of_f2 = [&](double step) {
    return (f2_(2.0 * step) - 2.0 * f2_(step) + f2_(0.0)) / (step * step);
  };
  const double phi4 = 2.0 * d2_of_f2(h) - d2_of_f2(2.0 * h);
  if (std::abs(phi4) > 1e-6 / (s * s * s))
    throw std::invalid_argument("custom profile: phi''''(0) must vanish");

  // phi'''(0) supplied by the caller must agree with the evaluator.
  if (std::abs(f3_(0.0) - phi3_0_) > 1e-8 * (1.0 + std::abs(phi3_0_)))
    throw std::invalid_argument("custom profile: phi3_at_0 disagrees with the evaluator at 0");
}

bool WarpProfile::smooth_at_origin() const {
  return kind_ != ProfileKind::PowerLaw || m_ == 1.0;
}

double WarpProfile::eval(double r, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("phi derivatives available for order 0..3 only");
  if (r < 0.0) throw std::invalid_argument("phi is defined on r >= 0");
  switch (kind_) {
    case ProfileKind::Euclidean:
      switch (order) {
        case 0: return r;
        case 1: return 1.0;
        default: return 0.0;
      }
    case ProfileKind::Hyperbolic: {
      const double x = alpha_ * r;
      switch (order) {
        case 0: return std::sinh(x) / alpha_;
        case 1: return std::cosh(x);
        case 2: return alpha_ * std::sinh(x);
        default: return alpha_ * alpha_ * std::cosh(x);
      }
    }
    case ProfileKind::OddPolynomial: {
      // phi = r + sum a_i r^(2i+1)
      double acc = order == 0 ? r : (order == 1 ? 1.0 : 0.0);
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const int k = 2 * static_cast<int>(i) + 3;  // power of the i-th term
        double c = coeffs_[i];
        int pw = k;
        for (int d = 0; d < order; ++d) c *= pw--;
        acc += c * std::pow(r, pw);
      }
      return acc;
    }
    case ProfileKind::PowerLaw: {
      double c = 1.0;
      double pw = m_;
      for (int d = 0; d < order; ++d) c *= pw--;
      if (r == 0.0) return pw == 0.0 ? c : (pw > 0.0 ? 0.0 : kNaN);
      return c * std::pow(r, pw);
    }
    case ProfileKind::Custom:
      switch (order) {
        case 0: return f0_(r);
        case 1: return f1_(r);
        case 2: return f2_(r);
        default: return f3_(r);
      }
  }
  return kNaN;
}

double WarpProfile::ratio1(double r) const {
  switch (kind_) {
    case ProfileKind::Euclidean: return 1.0 / r;
    case ProfileKind::Hyperbolic: return alpha_ / std::tanh(alpha_ * r);
    case ProfileKind::PowerLaw: return m_ / r;
    default: return eval(r, 1) / eval(r, 0);
  }
}

double WarpProfile::ratio2(double r) const {
  switch (kind_) {
    case ProfileKind::Euclidean: return 0.0;
    case ProfileKind::Hyperbolic: return alpha_ * alpha_;
    case ProfileKind::PowerLaw: return m_ * (m_ - 1.0) / (r * r);
    default: return eval(r, 2) / eval(r, 0);
  }
}

double WarpProfile::ratio3(double r) const {
  switch (kind_) {
    case ProfileKind::Euclidean: return 0.0;
    case ProfileKind::Hyperbolic: return alpha_ * alpha_ * alpha_ / std::tanh(alpha_ * r);
    case ProfileKind::PowerLaw: return m_ * (m_ - 1.0) * (m_ - 2.0) / (r * r * r);
    default: return eval(r, 3) / eval(r, 0);
  }
}

double WarpProfile::log_phi(double r) const {
  switch (kind_) {
    case ProfileKind::Hyperbolic: {
      const double x = alpha_ * r;
      // log(sinh x / alpha), stable for large x
      if (x > 20.0) return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * alpha_);
      return std::log(std::sinh(x) / alpha_);
    }
    case ProfileKind::PowerLaw: return m_ * std::log(r);
    default: return std::log(eval(r, 0));
  }
}

std::string WarpProfile::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ProfileKind::Euclidean: os << "euclidean (phi = r)"; break;
    case ProfileKind::Hyperbolic: os << "hyperbolic (phi = sinh(" << alpha_ << " r)/" << alpha_ << ")"; break;
    case ProfileKind::OddPolynomial: {
      os << "odd polynomial (phi = r";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << " + " << coeffs_[i] << " r^" << (2 * i + 3);
      os << ")";
      break;
    }
    case ProfileKind::PowerLaw: os << "power law (phi = r^" << m_ << ")"; break;
    case ProfileKind::Custom: os << "custom closed form"; break;
  }
  return os.str();
}

}  // namespace warplab
