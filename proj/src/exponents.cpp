#include "warplab/exponents.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace warplab {

namespace {

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

}  // namespace

AdmissiblePair::AdmissiblePair(double p_, double q_, double dim_) : p(p_), q(q_), dim(dim_) {
  if (!(dim > 2.0)) throw std::invalid_argument("admissible pair: dim must exceed 2");
  if (!(p >= 2.0)) throw std::invalid_argument("admissible pair: p must be >= 2");
  if (!(q >= 2.0) || std::isinf(q)) throw std::invalid_argument("admissible pair: q must lie in [2, inf)");
  const double defect = 2.0 * inv(p) + dim * inv(q) - dim / 2.0;
  if (std::abs(defect) > 1e-12)
    throw std::invalid_argument("admissible pair: 2/p + dim/q != dim/2");
}

std::string AdmissiblePair::str() const {
  std::ostringstream os;
  if (std::isinf(p))
    os << "p=inf";
  else
    os << "p=" << p;
  os << ", q=" << q << ", dim=" << dim;
  return os.str();
}

AdmissiblePair pair_from_q(double q, double dim) {
  if (!(dim > 2.0)) throw std::invalid_argument("pair_from_q: dim must exceed 2");
  const double q_max = 2.0 * dim / (dim - 2.0);
  if (!(q >= 2.0 && q <= q_max)) throw std::invalid_argument("pair_from_q: q outside [2, 2dim/(dim-2)]");
  AdmissiblePair pair;
  pair.q = q;
  pair.dim = dim;
  if (q == 2.0)
    pair.p = kInfExponent;
  else if (q == q_max)
    pair.p = 2.0;
  else
    pair.p = 2.0 / (dim / 2.0 - dim / q);
  return pair;
}

double effective_dimension(double m, int n) {
  if (n < 3) throw std::invalid_argument("effective_dimension: n must be at least 3");
  if (!(m > 1.0 / (n - 1))) throw std::invalid_argument("effective_dimension: need m > 1/(n-1)");
  return m * (n - 1) + 1.0;
}

ScatteringWindow scattering_window(int n, double N) {
  if (n < 3) throw std::invalid_argument("scattering_window: n must be at least 3");
  ScatteringWindow w;
  w.p_low = std::isinf(N) ? 0.0 : 4.0 / N;
  w.p_high = 4.0 / (n - 2);
  w.improves_euclidean_threshold = w.p_low < 2.0 / n;
  return w;
}

Interval d_range_for_classical(int n, double N) {
  if (n < 3) throw std::invalid_argument("d_range_for_classical: n must be at least 3");
  return {static_cast<double>(n), N};
}

}  // namespace warplab
