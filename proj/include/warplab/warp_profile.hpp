#pragma once

#include <functional>
#include <string>
#include <vector>

namespace warplab {

enum class ProfileKind { Euclidean, Hyperbolic, OddPolynomial, PowerLaw, Custom };

/// Warp profile phi of a rotationally symmetric metric dr^2 + phi(r)^2 dw^2.
///
/// Built-in kinds carry closed-form derivatives up to order 3; custom
/// profiles must supply all four evaluators plus phi'''(0).  Nothing in this
/// class differentiates numerically at evaluation time: the downstream
/// potential involves a second-order cancellation that finite differences
/// would poison.
///
/// Smooth kinds satisfy phi(0) = 0, phi'(0) = 1 and odd symmetry at the
/// origin (even derivatives vanish).  PowerLaw (phi = r^m on the whole
/// half-line) deliberately breaks the origin conditions for m != 1; it models
/// a flat cone whose radial Laplacian matches an effective dimension
/// N = m(n-1)+1, and is only meant to be used away from r = 0 or through the
/// Dirichlet half-line representation.
class WarpProfile {
 public:
  using Evaluator = std::function<double(double)>;

  WarpProfile() = default;  // Euclidean

  static WarpProfile euclidean();
  static WarpProfile hyperbolic(double alpha);                    // phi = sinh(alpha r)/alpha
  static WarpProfile odd_polynomial(std::vector<double> coeffs);  // phi = r + a1 r^3 + ... + ak r^(2k+1)
  static WarpProfile power_law(double exponent);                  // phi = r^m
  static WarpProfile custom(Evaluator phi, Evaluator dphi, Evaluator d2phi, Evaluator d3phi,
                            double phi3_at_0, double scale = 1.0);

  /// phi^(order)(r), order in 0..3.  Throws on unsupported order.
  double eval(double r, int order) const;

  // Log-derivative ratios.  For the built-in kinds these use forms that stay
  // finite where raw phi would overflow (hyperbolic profiles at large r).
  double ratio1(double r) const;  // phi'/phi
  double ratio2(double r) const;  // phi''/phi
  double ratio3(double r) const;  // phi'''/phi
  double log_phi(double r) const;

  double phi3_at_0() const { return phi3_0_; }
  /// phi^(5)(0); NaN for custom profiles (not required of the caller).
  double phi5_at_0() const { return phi5_0_; }
  double scale() const { return scale_; }
  ProfileKind kind() const { return kind_; }

  /// False for PowerLaw with m != 1: the profile is not a smooth warp at the
  /// origin and the near-origin series branch does not apply.
  bool smooth_at_origin() const;

  double hyperbolic_alpha() const { return alpha_; }
  double power_exponent() const { return m_; }
  const std::vector<double>& poly_coeffs() const { return coeffs_; }

  std::string describe() const;

 private:
  void validate_custom() const;

  ProfileKind kind_ = ProfileKind::Euclidean;
  double alpha_ = 1.0;
  double m_ = 1.0;
  std::vector<double> coeffs_;
  Evaluator f0_, f1_, f2_, f3_;
  double phi3_0_ = 0.0;
  double phi5_0_ = 0.0;
  double scale_ = 1.0;
};

}  // namespace warplab
