#pragma once

#include "blforms/rational.hpp"

#include <vector>

namespace blf {

/// Measure of the unit ball in R^k; k <= 4 supported.
double unit_ball_volume(int k);

/// One radial piece: value c * |t|^gamma for |t| in [a, b), zero elsewhere.
/// b may be +inf.
struct PowerPiece {
  double a = 0;
  double b = 0;
  double c = 0;
  double gamma = 0;
};

/// A radial function on R^k made of finitely many annular power pieces;
/// closed under multiplication by power weights (exact exponent shift) and
/// under pointwise products (partition refinement). Every test-function
/// construction in the necessity experiments lives in this class.
class PiecewisePowerFunction {
 public:
  PiecewisePowerFunction(int k, std::vector<PowerPiece> pieces);

  static PiecewisePowerFunction indicator(int k, double a, double b, double c = 1.0);
  /// c * |t|^gamma on a <= |t| < b.
  static PiecewisePowerFunction power(int k, double gamma, double a = 0.0,
                                      double b = std::numeric_limits<double>::infinity(),
                                      double c = 1.0);
  static PiecewisePowerFunction zero(int k);

  int k() const { return k_; }
  const std::vector<PowerPiece>& pieces() const { return pieces_; }
  bool is_zero() const;

  double value_at_radius(double r) const;

  /// Multiplies by |t|^lam (pieces shift gamma by lam, exactly).
  PiecewisePowerFunction weighted(double lam) const;

  /// f(t / R); pieces (a,b,c,g) -> (Ra, Rb, c R^{-g}, g).
  PiecewisePowerFunction dilated(double R) const;

  /// Pointwise product on the refined radial partition.
  PiecewisePowerFunction product(const PiecewisePowerFunction& other) const;

  double support_radius() const;  // sup of piece b (may be +inf)
  bool bounded_support() const;
  /// Radial breakpoints (piece endpoints), sorted, finite only.
  std::vector<double> breakpoints() const;

 private:
  int k_;
  std::vector<PowerPiece> pieces_;  // sorted by a, pairwise disjoint
};

/// Exact measure of {x in R^k : f(x) > s} (strict) or {f >= s}, computed
/// piecewise in closed form.
double distribution_function(const PiecewisePowerFunction& f, double s, bool strict = true);

/// Weighted Lorentz quasi-norm || |.|^lam f ||_{p,r} with the normalization
/// ||.||_{p,p} = ||.||_{L^p} exactly (closed form when p = r; weak norm via
/// sup s d(s)^{1/p}; otherwise p * integral of s^{r-1} d(s)^{r/p} to the
/// 1/r). Divergence returns +inf.
double lorentz_norm(const PiecewisePowerFunction& f, const Rational& inv_p,
                    const Rational& inv_r, const Rational& lam);

/// The general quadrature path regardless of p == r; exposed so tests can
/// cross-check it against the closed form.
double lorentz_norm_quadrature(const PiecewisePowerFunction& f, const Rational& inv_p,
                               const Rational& inv_r, const Rational& lam,
                               double rel_tol = 1e-11);

/// || f1 f2 ||_{p,r} / (||f1||_{p1,r1} ||f2||_{p2,r2}) with the exponent
/// constraints of Lorentz-scale Hoelder (1/p = 1/p1 + 1/p2 < 1,
/// 1/r <= 1/r1 + 1/r2, all 1/r in [0,1]).
double holder_lorentz_check(const PiecewisePowerFunction& f1, const PiecewisePowerFunction& f2,
                            const Rational& inv_p1, const Rational& inv_r1,
                            const Rational& inv_p2, const Rational& inv_r2,
                            const Rational& inv_p, const Rational& inv_r);

}  // namespace blf
