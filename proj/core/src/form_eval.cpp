#include "blforms/form_eval.hpp"

#include "blforms/parallel.hpp"
#include "blforms/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace blf {

namespace {

constexpr double kBatchCount = 16;
// Two-sided 99% Student-t quantile for 15 degrees of freedom.
constexpr double kT99Batch15 = 2.9467;

}  // namespace

FormInstance::FormInstance(VectorFamily fam_, std::vector<PiecewisePowerFunction> fns)
    : fam(std::move(fam_)), functions(std::move(fns)) {
  if (functions.size() != fam.size())
    throw InputError("form instance needs one function per family vector");
  for (const auto& f : functions)
    if (f.k() != fam.k()) throw InputError("function dimension differs from family k");
}

std::string to_string(EvalMethod m) {
  return m == EvalMethod::ExactPolygon ? "EXACT_POLYGON" : "MONTE_CARLO";
}

Rational evaluate_form_exact_rational(const FormInstance& inst) {
  const std::size_t n = inst.fam.size();
  if (inst.fam.k() != 1)
    throw PreconditionError("exact polygon path requires k = 1");
  for (const auto& f : inst.functions) {
    if (f.is_zero()) return Rational(0);
    for (const auto& p : f.pieces()) {
      if (p.gamma != 0)
        throw PreconditionError("exact polygon path requires indicator pieces (gamma = 0)");
      if (!std::isfinite(p.b))
        throw PreconditionError("exact polygon path requires finite outer radii");
    }
  }

  // Piece-choice odometer; per choice, sum over the 2^N sign patterns of the
  // clipped parallelogram areas, weighted by the product of amplitudes.
  std::vector<std::size_t> choice(n, 0);
  Rational total = 0;
  for (;;) {
    Rational amplitude = 1;
    std::vector<Rational> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
      const PowerPiece& p = inst.functions[j].pieces()[choice[j]];
      amplitude *= rational_from_double(p.c);
      lo[j] = rational_from_double(p.a);
      hi[j] = rational_from_double(p.b);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<StripConstraint> strips;
      strips.reserve(n);
      for (std::size_t j = 0; j < n; ++j) {
        const Vec2& v = inst.fam.vector(j);
        if (mask & (std::size_t{1} << j)) {
          strips.push_back({{-v.x, -v.y}, lo[j], hi[j]});
        } else {
          strips.push_back({v, lo[j], hi[j]});
        }
      }
      Rational area = strip_intersection_area(strips);
      // For pieces starting at 0 the two sign regions share the kernel line
      // only (measure zero), so plain summation is exact.
      total += amplitude * area;
    }
    std::size_t j = 0;
    while (j < n && ++choice[j] == inst.functions[j].pieces().size()) {
      choice[j] = 0;
      ++j;
    }
    if (j == n) break;
  }
  return total;
}

EvalResult evaluate_form_exact(const FormInstance& inst) {
  EvalResult r;
  r.method = EvalMethod::ExactPolygon;
  r.value = to_double(evaluate_form_exact_rational(inst));
  return r;
}

namespace {

struct BoundingBox {
  double lo1, hi1, lo2, hi2;  // per coordinate pair (the same for each m)
};

BoundingBox bounding_box(const VectorFamily& fam,
                         const std::vector<double>& support_radii) {
  // Pick two constraints with bounded support; their strips bound each
  // coordinate pair through the four corner solves.
  std::size_t a = fam.size(), b = fam.size();
  for (std::size_t j = 0; j < fam.size(); ++j) {
    if (!std::isfinite(support_radii[j])) continue;
    if (a == fam.size()) {
      a = j;
    } else {
      b = j;
      break;
    }
  }
  if (b == fam.size())
    throw PreconditionError(
        "Monte Carlo path needs at least two functions with bounded support; truncate the "
        "unbounded ones first");
  const Vec2& va = fam.vector(a);
  const Vec2& vb = fam.vector(b);
  double ax = to_double(va.x), ay = to_double(va.y);
  double bx = to_double(vb.x), by = to_double(vb.y);
  double det = ax * by - ay * bx;
  BoundingBox box{0, 0, 0, 0};
  for (int sa = -1; sa <= 1; sa += 2) {
    for (int sb = -1; sb <= 1; sb += 2) {
      double ta = sa * support_radii[a], tb = sb * support_radii[b];
      double x = (ta * by - tb * ay) / det;
      double y = (ax * tb - bx * ta) / det;
      box.lo1 = std::min(box.lo1, x);
      box.hi1 = std::max(box.hi1, x);
      box.lo2 = std::min(box.lo2, y);
      box.hi2 = std::max(box.hi2, y);
    }
  }
  return box;
}

/// Shared stratified-sampling core; `eval` maps a point x in R^{2k}
/// (layout x^1_1..x^1_k, x^2_1..x^2_k) to the integrand value.
template <typename Eval>
EvalResult stratified_mc(const VectorFamily& fam, const BoundingBox& box, const McOptions& opts,
                         const Eval& eval) {
  const int k = fam.k();
  const int dims = 2 * k;
  int strata = std::max(1, opts.strata_per_dim);
  // Keep the cell count small enough for ~64 samples per cell.
  while (strata > 1 &&
         std::pow(strata, dims) > std::max<double>(1.0, static_cast<double>(opts.budget) / 64.0))
    strata /= 2;
  std::uint64_t cells = 1;
  for (int d = 0; d < dims; ++d) cells *= static_cast<std::uint64_t>(strata);

  std::vector<double> widths(dims), lows(dims);
  for (int d = 0; d < dims; ++d) {
    bool first_block = d < k;
    lows[d] = first_block ? box.lo1 : box.lo2;
    widths[d] = (first_block ? box.hi1 - box.lo1 : box.hi2 - box.lo2) / strata;
  }
  double cell_volume = 1;
  for (int d = 0; d < dims; ++d) cell_volume *= widths[d];

  const std::uint64_t per_cell = std::max<std::uint64_t>(1, opts.budget / cells);
  const int batches = static_cast<int>(kBatchCount);

  // Per-cell, per-batch sums; merged in index order afterwards so the
  // result does not depend on the worker count.
  std::vector<std::vector<double>> batch_sums(cells, std::vector<double>(batches, 0.0));
  std::vector<std::vector<std::uint64_t>> batch_counts(cells,
                                                       std::vector<std::uint64_t>(batches, 0));

  parallel_for(cells, [&](std::size_t cell) {
    Rng rng(Rng::derive(opts.seed, cell));
    std::vector<std::uint64_t> idx(dims);
    std::uint64_t rest = cell;
    for (int d = 0; d < dims; ++d) {
      idx[d] = rest % strata;
      rest /= strata;
    }
    std::vector<double> x(dims);
    for (std::uint64_t s = 0; s < per_cell; ++s) {
      for (int d = 0; d < dims; ++d)
        x[d] = lows[d] + widths[d] * (static_cast<double>(idx[d]) + rng.next_double());
      double v = eval(x);
      int b = static_cast<int>(s % batches);
      batch_sums[cell][b] += v;
      batch_counts[cell][b] += 1;
    }
  });

  // Stratified estimate per batch, then batch means.
  std::vector<double> batch_estimates(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    double acc = 0;
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
      if (batch_counts[cell][b] > 0)
        acc += cell_volume * batch_sums[cell][b] / static_cast<double>(batch_counts[cell][b]);
    }
    batch_estimates[b] = acc;
  }
  double mean = 0;
  for (double e : batch_estimates) mean += e;
  mean /= batches;
  double var = 0;
  for (double e : batch_estimates) var += (e - mean) * (e - mean);
  var /= (batches - 1);

  EvalResult r;
  r.method = EvalMethod::MonteCarlo;
  r.value = mean;
  r.error_bound = kT99Batch15 * std::sqrt(var / batches);
  r.seed = opts.seed;
  r.sample_count = per_cell * cells;
  return r;
}

}  // namespace

EvalResult evaluate_form_mc(const FormInstance& inst, const McOptions& opts) {
  for (const auto& f : inst.functions) {
    if (f.is_zero()) {
      EvalResult r;
      r.method = EvalMethod::MonteCarlo;
      r.seed = opts.seed;
      return r;  // exact zero, error bound 0
    }
  }
  const int k = inst.fam.k();
  std::vector<double> radii;
  radii.reserve(inst.functions.size());
  for (const auto& f : inst.functions) radii.push_back(f.support_radius());
  BoundingBox box = bounding_box(inst.fam, radii);

  std::vector<std::pair<double, double>> vs;
  for (std::size_t j = 0; j < inst.fam.size(); ++j)
    vs.emplace_back(to_double(inst.fam.vector(j).x), to_double(inst.fam.vector(j).y));

  auto eval = [&](const std::vector<double>& x) {
    double prod = 1;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      double norm_sq = 0;
      for (int m = 0; m < k; ++m) {
        double c = vs[j].first * x[m] + vs[j].second * x[k + m];
        norm_sq += c * c;
      }
      prod *= inst.functions[j].value_at_radius(std::sqrt(norm_sq));
      if (prod == 0) return 0.0;
    }
    return prod;
  };
  return stratified_mc(inst.fam, box, opts, eval);
}

EvalResult evaluate_form_mc_tensor(const VectorFamily& fam,
                                   const std::vector<PiecewisePowerFunction>& base_functions,
                                   const McOptions& opts) {
  if (base_functions.size() != fam.size())
    throw InputError("tensor evaluation needs one base function per vector");
  for (const auto& f : base_functions) {
    if (f.k() != 1) throw InputError("tensor bases must be one-dimensional");
    if (f.is_zero()) {
      EvalResult r;
      r.method = EvalMethod::MonteCarlo;
      r.seed = opts.seed;
      return r;
    }
  }
  const int k = fam.k();
  std::vector<double> radii;
  radii.reserve(base_functions.size());
  for (const auto& f : base_functions) radii.push_back(f.support_radius());
  BoundingBox box = bounding_box(fam, radii);

  std::vector<std::pair<double, double>> vs;
  for (std::size_t j = 0; j < fam.size(); ++j)
    vs.emplace_back(to_double(fam.vector(j).x), to_double(fam.vector(j).y));

  auto eval = [&](const std::vector<double>& x) {
    double prod = 1;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      for (int m = 0; m < k; ++m) {
        double c = vs[j].first * x[m] + vs[j].second * x[k + m];
        prod *= base_functions[j].value_at_radius(std::abs(c));
        if (prod == 0) return 0.0;
      }
    }
    return prod;
  };
  return stratified_mc(fam, box, opts, eval);
}

}  // namespace blf
