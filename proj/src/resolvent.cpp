#include "warplab/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace warplab {

namespace {

using cd = std::complex<double>;

/// Prefactored Thomas solve of (diag - z) u = rhs with constant real
/// off-diagonal; reused across every power iteration of one sample.
class ShiftedTridiagSolver {
 public:
  ShiftedTridiagSolver(const DiscreteOperator& op, cd z) : e_(op.offdiag) {
    const std::size_t m = op.diag.size();
    cp_.resize(m);
    den_inv_.resize(m);
    cd den = op.diag[0] - z;
    den_inv_[0] = 1.0 / den;
    cp_[0] = e_ * den_inv_[0];
    for (std::size_t i = 1; i < m; ++i) {
      den = (op.diag[i] - z) - e_ * cp_[i - 1];
      if (den == 0.0) throw std::runtime_error("resolvent solve: singular shifted system");
      den_inv_[i] = 1.0 / den;
      cp_[i] = e_ * den_inv_[i];
    }
  }

  void solve(std::vector<cd>& x) const {
    const std::size_t m = cp_.size();
    x[0] *= den_inv_[0];
    for (std::size_t i = 1; i < m; ++i) x[i] = (x[i] - e_ * x[i - 1]) * den_inv_[i];
    for (std::size_t i = m - 1; i-- > 0;) x[i] -= cp_[i] * x[i + 1];
  }

 private:
  double e_;
  std::vector<cd> cp_, den_inv_;
};

double norm2(const std::vector<cd>& v) {
  double s = 0.0;
  for (const cd& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

DiscreteOperator assemble(const EffectivePotential& pot) {
  DiscreteOperator op;
  op.grid = pot.grid;
  op.dim_n = pot.dim_n;
  const double h = pot.grid.spacing();
  op.offdiag = -1.0 / (h * h);
  op.diag.resize(pot.grid.interior());
  for (int i = 0; i < pot.grid.interior(); ++i) op.diag[i] = 2.0 / (h * h) + pot.q_values[i];
  return op;
}

DiscreteOperator assemble_from_v(std::span<const double> v_at_nodes, const Grid& grid, int n) {
  if (static_cast<int>(v_at_nodes.size()) < grid.interior())
    throw std::invalid_argument("assemble_from_v: potential samples do not cover the grid");
  DiscreteOperator op;
  op.grid = grid;
  op.dim_n = n;
  const double h = grid.spacing();
  op.offdiag = -1.0 / (h * h);
  op.diag.resize(grid.interior());
  const double cfug = (n - 1) * (n - 3) / 4.0;
  for (int i = 0; i < grid.interior(); ++i) {
    const double r = grid.node(i);
    op.diag[i] = 2.0 / (h * h) + v_at_nodes[i] + cfug / (r * r);
  }
  return op;
}

ResolventSample weighted_resolvent_norm(const DiscreteOperator& op, double lambda, double eps,
                                        int max_iter, double tol, std::uint64_t seed) {
  if (eps == 0.0) throw std::invalid_argument("weighted_resolvent_norm: eps must be nonzero");
  const std::size_t m = op.diag.size();
  const cd z{lambda, eps};
  const ShiftedTridiagSolver fwd(op, z);
  const ShiftedTridiagSolver adj(op, std::conj(z));

  std::vector<double> weight(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = op.grid.node(static_cast<int>(i));
    weight[i] = 1.0 / std::sqrt(1.0 + r * r);
  }

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cd> x(m);
  for (cd& v : x) v = {dist(gen), dist(gen)};
  double nx = norm2(x);
  for (cd& v : x) v /= nx;

  std::vector<cd> y(m);
  auto apply_gram = [&](const std::vector<cd>& in, std::vector<cd>& out) {
    out = in;
    for (std::size_t i = 0; i < m; ++i) out[i] *= weight[i];
    fwd.solve(out);
    for (std::size_t i = 0; i < m; ++i) out[i] *= weight[i] * weight[i];
    adj.solve(out);
    for (std::size_t i = 0; i < m; ++i) out[i] *= weight[i];
  };

  ResolventSample sample;
  sample.lambda = lambda;
  sample.eps = eps;
  double prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    apply_gram(x, y);
    // Rayleigh quotient of the Hermitian Gram operator on the unit vector x
    double rho = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      rho += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    rho = std::max(rho, 0.0);
    const double sigma = std::sqrt(rho);
    sample.norm = sigma;
    sample.iterations = it;
    if (it >= 2 && std::abs(sigma - prev) <= tol * std::max(sigma, 1e-300)) {
      sample.converged = true;
      break;
    }
    prev = sigma;
    const double ny = norm2(y);
    if (ny == 0.0) break;
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / ny;
  }
  sample.scaled = sample.norm * std::sqrt(std::abs(lambda) + 1.0);
  return sample;
}

ResolventSweep resolvent_sweep(const DiscreteOperator& op, std::span<const double> lambdas,
                               std::span<const double> eps_list, bool parallel) {
  ResolventSweep sweep;
  const std::size_t total = lambdas.size() * eps_list.size();
  sweep.samples.resize(total);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double lam = lambdas[k / eps_list.size()];
      const double ep = eps_list[k % eps_list.size()];
      sweep.samples[k] = weighted_resolvent_norm(op, lam, ep);
    }
  };

  const unsigned workers =
      parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (workers <= 1 || total < 2) {
    run_range(0, total);
  } else {
    std::vector<std::future<void>> tasks;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(total, b + chunk);
      if (b >= e) break;
      tasks.push_back(std::async(std::launch::async, run_range, b, e));
    }
    for (auto& t : tasks) t.get();
  }

  sweep.sup_scaled = 0.0;
  for (const ResolventSample& s : sweep.samples) {
    if (!s.converged) {
      ++sweep.non_converged;
      continue;
    }
    if (s.scaled > sweep.sup_scaled) {
      sweep.sup_scaled = s.scaled;
      sweep.sup_lambda = s.lambda;
      sweep.sup_eps = s.eps;
    }
  }

  // Blow-up as eps decreases at fixed lambda signals a point-spectrum hit.
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const ResolventSample* lo = nullptr;  // smallest |eps|
    const ResolventSample* hi = nullptr;  // largest |eps|
    for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
      const ResolventSample& s = sweep.samples[li * eps_list.size() + ei];
      if (!s.converged) continue;
      if (!lo || std::abs(s.eps) < std::abs(lo->eps)) lo = &s;
      if (!hi || std::abs(s.eps) > std::abs(hi->eps)) hi = &s;
    }
    if (lo && hi && lo != hi && hi->norm > 0.0 && lo->norm / hi->norm > 10.0)
      sweep.blowup_lambdas.push_back(lambdas[li]);
  }
  return sweep;
}

int eigenvalue_count_below(const DiscreteOperator& op, double x) {
  const double e2 = op.offdiag * op.offdiag;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < op.diag.size(); ++i) {
    q = (op.diag[i] - x) - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = 1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

double smallest_eigenvalue(const DiscreteOperator& op) {
  if (op.diag.empty()) throw std::invalid_argument("smallest_eigenvalue: empty operator");
  const auto [dmin, dmax] = std::minmax_element(op.diag.begin(), op.diag.end());
  double lo = *dmin - 2.0 * std::abs(op.offdiag);
  double hi = *dmax + 2.0 * std::abs(op.offdiag);
  // bisect down to rounding; comfortably inside the 1e-10 * scale contract
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max({std::abs(lo), std::abs(hi), 1.0});
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eigenvalue_count_below(op, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace warplab
