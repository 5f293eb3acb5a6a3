#pragma once

#include "warplab/grid.hpp"
#include "warplab/manifold.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace warplab {

/// Symmetric tridiagonal discretization of P = -d^2/dr^2 + Q on the interior
/// nodes (Dirichlet at both walls): diag_j = 2/h^2 + Q_j, off-diagonal -1/h^2.
/// The solver's Crank-Nicolson matrix is I -+ i dt/2 L with L = -P built from
/// the same potential samples.
struct DiscreteOperator {
  Grid grid;
  std::vector<double> diag;  // interior nodes only, size grid.interior()
  double offdiag = 0.0;
  int dim_n = 3;
};

/// Assemble from sampled Q values (the half-line potential).
DiscreteOperator assemble(const EffectivePotential& pot);

/// Assemble from sampled V values: Q_j = V(r_j) + (n-1)(n-3)/(4 r_j^2).
DiscreteOperator assemble_from_v(std::span<const double> v_at_nodes, const Grid& grid, int n);

inline constexpr std::uint64_t kResolventSeed = 20240605;  // fixed power-iteration seed

struct ResolventSample {
  double lambda = 0.0;
  double eps = 0.0;
  double norm = 0.0;    // ||<r>^-1 (P - lambda - i eps)^-1 <r>^-1||, largest singular value
  double scaled = 0.0;  // norm * sqrt(|lambda| + 1)
  bool converged = false;
  int iterations = 0;
};

/// Largest singular value of D (P - lambda - i eps)^-1 D, D = diag(<r_j>^-1),
/// by power iteration on the Gram operator; every application is a pair of
/// prefactored complex tridiagonal solves.  Stops when the value settles to
/// `tol` relative or after `max_iter` iterations (sample.converged records
/// which).
ResolventSample weighted_resolvent_norm(const DiscreteOperator& op, double lambda, double eps,
                                        int max_iter = 500, double tol = 1e-8,
                                        std::uint64_t seed = kResolventSeed);

struct ResolventSweep {
  std::vector<ResolventSample> samples;  // lambda-major, eps order as given
  double sup_scaled = 0.0;
  double sup_lambda = 0.0;
  double sup_eps = 0.0;
  std::vector<double> blowup_lambdas;  // lambdas whose norm grows >10x as eps decreases
  int non_converged = 0;
};

/// Samples the whole (lambda, eps) product.  Non-converged samples are kept
/// in `samples` but excluded from the sup and flagged in `non_converged`.
/// A >10x growth of the norm from the largest to the smallest eps at a fixed
/// lambda marks an embedded eigenvalue / resonance candidate.
ResolventSweep resolvent_sweep(const DiscreteOperator& op, std::span<const double> lambdas,
                               std::span<const double> eps_list, bool parallel = true);

/// Smallest eigenvalue by Sturm-count bisection, absolute tolerance
/// 1e-10 * (Gershgorin radius).
double smallest_eigenvalue(const DiscreteOperator& op);

/// Eigenvalue count strictly below x (Sturm sequence); exposed for tests.
int eigenvalue_count_below(const DiscreteOperator& op, double x);

}  // namespace warplab
