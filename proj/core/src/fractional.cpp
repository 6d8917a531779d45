#include "blforms/fractional.hpp"

#include "blforms/quadrature.hpp"
#include "blforms/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace blf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double fractional_1d(const std::vector<PiecewisePowerFunction>& fs, double lam,
                     const std::vector<double>& thetas, double x, double tol) {
  auto f = [&](double y) {
    double w = std::pow(std::abs(y), -lam);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      w *= fs[j].value_at_radius(std::abs(x - thetas[j] * y));
      if (w == 0) return 0.0;
    }
    return w;
  };

  // Axis points where the integrand is singular or kinked: the kernel origin
  // and every preimage of a radial breakpoint of an argument.
  std::set<double> cut_set{0.0};
  bool bounded = false;
  double y_lo = -kInf, y_hi = kInf;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    for (double bp : fs[j].breakpoints()) {
      cut_set.insert((x - bp) / thetas[j]);
      cut_set.insert((x + bp) / thetas[j]);
    }
    cut_set.insert(x / thetas[j]);  // |x - theta y| = 0
    if (fs[j].bounded_support()) {
      double r = fs[j].support_radius();
      double a = (x - r) / thetas[j], b = (x + r) / thetas[j];
      y_lo = std::max(y_lo, std::min(a, b));
      y_hi = std::min(y_hi, std::max(a, b));
      bounded = true;
    }
  }

  if (!bounded) {
    // All arguments reach infinity; tail power is the kernel plus the
    // outermost piece exponents.
    double e = -lam;
    for (const auto& g : fs) e += g.pieces().back().gamma;
    if (e >= -1.0) return kInf;
  } else if (!(y_lo < y_hi)) {
    return 0.0;
  }

  std::vector<double> cuts;
  for (double c : cut_set) {
    if (!bounded || (c > y_lo && c < y_hi)) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  if (bounded) {
    cuts.insert(cuts.begin(), y_lo);
    cuts.push_back(y_hi);
  }

  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    // Either end may be singular; approach each from the middle.
    double mid = 0.5 * (a + b);
    total += integrate_toward_singularity(f, a, mid, tol);
    total += integrate_toward_singularity(f, b, mid, tol);
    if (!std::isfinite(total)) return kInf;
  }
  if (!bounded && !cuts.empty()) {
    // The outermost cut points may be singular; approach them with shells
    // before the smooth doubling tail takes over.
    double far_hi = std::max(2.0 * std::abs(cuts.back()), cuts.back() + 1.0);
    total += integrate_toward_singularity(f, cuts.back(), far_hi, tol);
    total += integrate_upper_tail(f, far_hi, tol);
    auto f_neg = [&](double y) { return f(-y); };
    double far_lo = std::min(-2.0 * std::abs(cuts.front()), cuts.front() - 1.0);
    total += integrate_toward_singularity(f, cuts.front(), far_lo, tol);
    total += integrate_upper_tail(f_neg, -far_lo, tol);
  }
  return std::isfinite(total) ? total : kInf;
}

double fractional_mc(const std::vector<PiecewisePowerFunction>& fs, double lam,
                     const std::vector<double>& thetas, const std::vector<double>& x, int k,
                     const FractionalOptions& opts) {
  // y must satisfy |x - theta_j y| <= r_j for every bounded argument, so the
  // integrand lives in a ball around the origin.
  double x_norm = 0;
  for (double c : x) x_norm += c * c;
  x_norm = std::sqrt(x_norm);
  double r_max = kInf;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (fs[j].bounded_support())
      r_max = std::min(r_max, (x_norm + fs[j].support_radius()) / std::abs(thetas[j]));
  }
  if (!std::isfinite(r_max))
    throw PreconditionError(
        "k >= 2 fractional integral needs at least one bounded-support argument; truncate "
        "first");

  // Importance density p(y) = |y|^{-lam} / Z on the ball of radius r_max,
  // Z = sigma_k r_max^{k-lam} / (k-lam); the kernel cancels exactly, so the
  // estimator is Z * mean of prod_j f_j(x - theta_j y).
  const double kk = static_cast<double>(k);
  const double sigma_k = kk * unit_ball_volume(k);
  const double z = sigma_k * std::pow(r_max, kk - lam) / (kk - lam);

  Rng rng(Rng::derive(opts.seed, 0x46524143));
  double sum = 0;
  const std::uint64_t n = std::max<std::uint64_t>(1, opts.budget);
  std::vector<double> dir(k);
  for (std::uint64_t i = 0; i < n; ++i) {
    double r = r_max * std::pow(rng.next_double(), 1.0 / (kk - lam));
    double norm_sq = 0;
    for (int d = 0; d < k; d += 2) {
      double u1 = std::max(rng.next_double(), 1e-300);
      double u2 = rng.next_double();
      double mag = std::sqrt(-2.0 * std::log(u1));
      dir[d] = mag * std::cos(2 * M_PI * u2);
      if (d + 1 < k) dir[d + 1] = mag * std::sin(2 * M_PI * u2);
    }
    for (int d = 0; d < k; ++d) norm_sq += dir[d] * dir[d];
    double scale = r / std::sqrt(std::max(norm_sq, 1e-300));

    double prod = 1;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      double dist_sq = 0;
      for (int d = 0; d < k; ++d) {
        double c = x[d] - thetas[j] * scale * dir[d];
        dist_sq += c * c;
      }
      prod *= fs[j].value_at_radius(std::sqrt(dist_sq));
      if (prod == 0) break;
    }
    sum += prod;
  }
  return z * sum / static_cast<double>(n);
}

}  // namespace

double apply_fractional_integral(const std::vector<PiecewisePowerFunction>& fs, double lam,
                                 const std::vector<double>& thetas, const std::vector<double>& x,
                                 const FractionalOptions& opts) {
  if (fs.empty()) throw InputError("fractional integral needs at least one argument");
  if (fs.size() != thetas.size()) throw InputError("one theta per argument required");
  const int k = fs.front().k();
  for (const auto& f : fs) {
    if (f.k() != k) throw InputError("argument dimensions disagree");
    if (f.is_zero()) return 0.0;
  }
  if (x.size() != static_cast<std::size_t>(k)) throw InputError("x must lie in R^k");
  if (!(lam > 0 && lam < k)) throw InputError("lambda must lie in (0, k)");
  for (double th : thetas)
    if (th == 0) throw InputError("theta shifts must be nonzero");

  if (k == 1) return fractional_1d(fs, lam, thetas, x[0], opts.tol);
  return fractional_mc(fs, lam, thetas, x, k, opts);
}

}  // namespace blf
