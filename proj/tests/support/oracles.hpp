#pragma once

// Test-only oracles, kept independent of the library's solution paths:
//  - a direct Crank-Nicolson discretization of the manifold equation in the
//    u variable (first-order drift term and all), against which the
//    half-line route is cross-checked;
//  - the closed-form free Gaussian evolution on R^n;
//  - deterministic random radial fields.

#include "warplab/field.hpp"
#include "warplab/solver.hpp"
#include "warplab/warp_profile.hpp"

#include <complex>
#include <random>
#include <vector>

namespace warplab::testing {

using cd = std::complex<double>;

/// General complex tridiagonal solve (Thomas), rows (a_i, b_i, c_i).
inline void tridiag_solve(std::vector<cd>& x, const std::vector<cd>& a, const std::vector<cd>& b,
                          const std::vector<cd>& c) {
  const std::size_t m = b.size();
  std::vector<cd> cp(m), dp(m);
  cp[0] = c[0] / b[0];
  dp[0] = x[0] / b[0];
  for (std::size_t i = 1; i < m; ++i) {
    const cd den = b[i] - a[i] * cp[i - 1];
    cp[i] = c[i] / den;
    dp[i] = (x[i] - a[i] * dp[i - 1]) / den;
  }
  x[m - 1] = dp[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
}

/// Crank-Nicolson for i u_t = -(u'' + (n-1) (phi'/phi) u') directly on u,
/// with zero ghosts at both walls.  Second-order consistent with the same
/// continuum problem as the half-line scheme, through a different operator.
inline RadialField evolve_u_direct(const RadialField& u0, const WarpProfile& profile, int n,
                                   double T, double dt) {
  const Grid& grid = u0.grid;
  const int m = grid.interior();
  const double h = grid.spacing();
  const cd I{0.0, 1.0};

  std::vector<cd> al(m), bl(m), cl(m);  // left matrix  (I - i dt/2 A)
  std::vector<cd> ar(m), br(m), cr(m);  // right matrix (I + i dt/2 A)
  for (int i = 0; i < m; ++i) {
    const double drift = (n - 1) * profile.ratio1(grid.node(i));
    const cd sub = 1.0 / (h * h) - drift / (2.0 * h);
    const cd sup = 1.0 / (h * h) + drift / (2.0 * h);
    const cd diag = -2.0 / (h * h);
    al[i] = -I * (0.5 * dt) * sub;
    bl[i] = 1.0 - I * (0.5 * dt) * diag;
    cl[i] = -I * (0.5 * dt) * sup;
    ar[i] = I * (0.5 * dt) * sub;
    br[i] = 1.0 + I * (0.5 * dt) * diag;
    cr[i] = I * (0.5 * dt) * sup;
  }

  std::vector<cd> u(u0.values.begin(), u0.values.begin() + m);
  const int steps = std::max(1, static_cast<int>(std::llround(T / dt)));
  std::vector<cd> rhs(m);
  for (int k = 0; k < steps; ++k) {
    for (int i = 0; i < m; ++i) {
      cd acc = br[i] * u[i];
      if (i > 0) acc += ar[i] * u[i - 1];
      if (i + 1 < m) acc += cr[i] * u[i + 1];
      rhs[i] = acc;
    }
    u = rhs;
    tridiag_solve(u, al, bl, cl);
  }
  RadialField out = u0;
  for (int i = 0; i < m; ++i) out.values[i] = u[i];
  out.values[grid.size() - 1] = 0.0;
  return out;
}

/// Free evolution of exp(-r^2/(2 width^2)) under the flat Laplacian on R^n:
/// u(t, r) = (1 + 2 i t / w^2)^(-n/2) exp(-r^2 / (2 (w^2 + 2 i t))).
inline cd free_gaussian(double t, double r, double width, int n) {
  const cd denom{width * width, 2.0 * t};
  return std::pow(cd{1.0, 2.0 * t / (width * width)}, -0.5 * n) *
         std::exp(-r * r / (2.0 * denom));
}

/// Deterministic random field in the u representation: complex Gaussian node
/// values under a random-width envelope.
inline RadialField random_field(const Grid& grid, int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> width_dist(0.5, 3.0);
  const double w = width_dist(gen);
  RadialField u{grid, std::vector<cd>(grid.size()), Representation::UOnM, n};
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    const double env = std::exp(-r * r / (2.0 * w * w));
    u.values[i] = cd{normal(gen), normal(gen)} * env;
  }
  u.values[grid.size() - 1] = 0.0;
  return u;
}

}  // namespace warplab::testing
