#pragma once

#include "blforms/piecewise_power.hpp"
#include "blforms/polygon.hpp"
#include "blforms/vector_family.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace blf {

/// The form Lambda(f_1,...,f_N) = int over R^{2k} of prod f_j(v_j . x) dx
/// for a fixed family and radial arguments (each function's k matches).
struct FormInstance {
  VectorFamily fam;
  std::vector<PiecewisePowerFunction> functions;

  FormInstance(VectorFamily fam_, std::vector<PiecewisePowerFunction> fns);
};

enum class EvalMethod { ExactPolygon, MonteCarlo };

std::string to_string(EvalMethod m);

struct EvalResult {
  double value = 0;
  double error_bound = 0;  // half-width of the 99% CI; 0 on exact paths
  EvalMethod method = EvalMethod::ExactPolygon;
  std::uint64_t seed = 0;
  std::uint64_t sample_count = 0;
};

/// Exact path: k = 1 and every function a finite sum of indicator pieces
/// with finite outer radii. The integrand's support splits over piece
/// choices and sign patterns into convex polygons clipped exactly.
/// Throws PreconditionError when the instance is outside this class.
EvalResult evaluate_form_exact(const FormInstance& inst);

/// The exact value as a rational (doubles in the pieces convert exactly).
Rational evaluate_form_exact_rational(const FormInstance& inst);

struct McOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  int strata_per_dim = 32;  // clamped so the cell count stays << budget
};

/// Stratified Monte Carlo over the bounding box determined by two
/// bounded-support constraints. Deterministic for fixed (seed, budget,
/// stratification), independent of worker count; error bound from batch
/// means at 99% confidence.
EvalResult evaluate_form_mc(const FormInstance& inst, const McOptions& opts = {});

/// Same sampler for tensor-power arguments: each one-dimensional base f_j
/// acts as F_j(t) = prod_m f_j(t_m) on R^k. Used by the tensorization check.
EvalResult evaluate_form_mc_tensor(const VectorFamily& fam,
                                   const std::vector<PiecewisePowerFunction>& base_functions,
                                   const McOptions& opts = {});

}  // namespace blf
