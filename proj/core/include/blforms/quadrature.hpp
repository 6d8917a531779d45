#pragma once

#include <functional>

namespace blf {

using Integrand = std::function<double(double)>;

/// Fixed 15-point Gauss-Legendre rule on [a, b].
double gauss15(const Integrand& f, double a, double b);

/// Adaptive bisection with a GL7/GL15 error estimate. rel_tol is relative to
/// the accumulated integral (with a tiny absolute floor).
double integrate_adaptive(const Integrand& f, double a, double b, double rel_tol);

/// Integral over [s0, b] (or [a, s0] when from_above is false) where f has an
/// integrable power singularity at s0: dyadic shells toward s0, each handled
/// adaptively, with a geometric-series remainder once the shell contributions
/// decay. Returns +inf when the shell sums keep growing.
double integrate_toward_singularity(const Integrand& f, double s0, double far, double rel_tol);

/// Integral over [lo, +inf) for f that is asymptotically a power s^e with
/// e < -1: dyadic shells upward plus a geometric remainder. Returns +inf when
/// shells fail to decay.
double integrate_upper_tail(const Integrand& f, double lo, double rel_tol);

}  // namespace blf
