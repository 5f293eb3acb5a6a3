#pragma once

#include <limits>
#include <string>

namespace warplab {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Admissible space-time Lebesgue pair: 2/p + dim/q = dim/2 with p >= 2 and
/// the (2, inf, 2) endpoint excluded.  p = infinity encodes the conservation
/// endpoint; 1/p is taken as 0 in every identity.
struct AdmissiblePair {
  double p = kInfExponent;
  double q = 2.0;
  double dim = 3.0;

  AdmissiblePair() = default;
  AdmissiblePair(double p_, double q_, double dim_);  // validates the identity

  std::string str() const;
};

/// Solve the admissibility identity for p given q in [2, 2*dim/(dim-2)].
AdmissiblePair pair_from_q(double q, double dim);

/// N = m(n-1) + 1 for a profile growing like r^m; requires m > 1/(n-1).
double effective_dimension(double m, int n);

struct ScatteringWindow {
  double p_low = 0.0;   // 4/N (0 in the exponential regime, N = infinity)
  double p_high = 0.0;  // 4/(n-2)
  /// True when the lower endpoint beats the flat-space short-range threshold
  /// 2/n, i.e. 4/N < 2/n.
  bool improves_euclidean_threshold = false;
  bool empty() const { return !(p_low < p_high); }
};

ScatteringWindow scattering_window(int n, double N);

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool empty() const { return !(lo < hi); }
};

/// Open interval (n, N) of dimensions d whose unweighted estimates hold.
Interval d_range_for_classical(int n, double N);

}  // namespace warplab
