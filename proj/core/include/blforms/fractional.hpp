#pragma once

#include "blforms/piecewise_power.hpp"

#include <cstdint>
#include <vector>

namespace blf {

struct FractionalOptions {
  double tol = 1e-8;        // relative quadrature tolerance (k = 1 path)
  std::uint64_t seed = 0;   // k >= 2 Monte Carlo path
  std::uint64_t budget = 400'000;
};

/// T_{N,lambda}(f_1,...,f_N)(x) = int |y|^{-lam} prod_j f_j(x - theta_j y) dy
/// over R^k. k = 1 uses adaptive quadrature with the integration axis split
/// at y = 0 and at every kink (x -+ breakpoint)/theta_j, dyadic refinement
/// into singular endpoints, and closed-tail handling for unbounded supports;
/// k in {2,3,4} uses Monte Carlo with radial importance sampling
/// proportional to |y|^{-lam} near 0. Divergence is reported as +inf.
double apply_fractional_integral(const std::vector<PiecewisePowerFunction>& fs, double lam,
                                 const std::vector<double>& thetas, const std::vector<double>& x,
                                 const FractionalOptions& opts = {});

}  // namespace blf
