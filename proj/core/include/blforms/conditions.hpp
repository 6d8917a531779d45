#pragma once

#include "blforms/index_point.hpp"
#include "blforms/vector_family.hpp"
#include "blforms/verdict.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace blf {

/// Sufficiency for the weighted form estimate: scaling equality, strict
/// pairwise-complement sums > 1, index sums >= 0, interpolation sum >= 1,
/// and every 1/p_j in the open interval (0,1). Exact rational arithmetic.
ConditionVerdict check_sufficient(const IndexPoint& idx, const VectorFamily& fam);

/// Necessary conditions: scaling equality, non-strict complement sums >= 1,
/// index sums >= 0, interpolation sum >= 1, 1/p_j in [0,1].
ConditionVerdict check_necessary(const IndexPoint& idx, const VectorFamily& fam);

enum class Classification { Sufficient, Boundary, NecessaryFail };

std::string to_string(Classification c);

/// SUFFICIENT when the sufficiency system holds; NECESSARY_FAIL when some
/// necessary condition fails (boundedness impossible); BOUNDARY otherwise.
Classification classify(const IndexPoint& idx, const VectorFamily& fam);

/// Unweighted polytope membership via the subspace criterion
/// sum_j dim(v_j . V)/p_j >= dim V. Checks V = R^2, the generic line, and
/// the N lines perpendicular to each v_ell (the only lines where some
/// dim(v_ell . V) vanishes, by the pairwise-basis assumption).
ConditionVerdict check_subspace_condition(const std::vector<Rational>& inv_ps,
                                          const VectorFamily& fam);

/// Entrywise (1-t) * a + t * b for t in [0,1]; interpolates Lorentz
/// exponents when both points carry them.
IndexPoint segment_midpoint(const IndexPoint& a, const IndexPoint& b, const Rational& t);

/// The five displayed condition groups for the N-linear fractional integral:
/// scaling with the kernel slot, kernel power range, per-slot sums < 1,
/// interpolation sum >= 1, and the index conditions with strict
/// lambda + sum_{j != ell} lambda_j > 0.
ConditionVerdict check_mlfi(const MlfiIndexPoint& idx);

/// Historical condition sets, for set-difference comparisons.
ConditionVerdict check_stein_weiss(const MlfiIndexPoint& idx);    // N = 1
ConditionVerdict check_grafakos(const MlfiIndexPoint& idx);       // all lambda_j = 0
ConditionVerdict check_komori_furuya(const MlfiIndexPoint& idx);  // N = 2

enum class MlfiConditionSet { Thm41, SteinWeiss, Grafakos, KomoriFuruya };

MlfiConditionSet mlfi_set_from_name(const std::string& name);
std::string to_string(MlfiConditionSet set);
ConditionVerdict check_mlfi_set(MlfiConditionSet set, const MlfiIndexPoint& idx);

/// The (N+2)-linear exponent vector equivalent to an mlfi point: slots
/// j = 0..N carry their own exponents and the kernel occupies the last slot
/// with (1/p, lambda) = (0, lambda).
IndexPoint mlfi_to_index_point(const MlfiIndexPoint& idx);

/// The vector family (e1, e1 - theta_1 e2, ..., e1 - theta_N e2, e2) of the
/// associated (N+2)-linear form; always satisfies the pairwise-basis
/// assumption because the theta_j are distinct and nonzero.
VectorFamily mlfi_vector_family(const MlfiIndexPoint& idx);

struct ComparePoint {
  MlfiIndexPoint point;
  bool in_a = false;
  bool in_b = false;
  bool pinned = false;  // one of the always-included probe points
};

struct CompareReport {
  MlfiConditionSet set_a;
  MlfiConditionSet set_b;
  std::size_t sampled = 0;
  std::size_t count_only_a = 0;
  std::size_t count_only_b = 0;
  std::size_t count_both = 0;
  std::size_t count_neither = 0;
  std::vector<ComparePoint> only_a;   // capped sample lists
  std::vector<ComparePoint> only_b;
  std::vector<ComparePoint> both;
};

struct CompareConfig {
  std::size_t arity = 2;       // N; both sets must accept it
  int k = 1;
  std::size_t budget = 2000;   // sampled points (pinned probes extra)
  std::uint64_t seed = 0;
  std::int64_t denominator = 24;
  std::size_t list_cap = 16;   // per-bucket stored points
};

/// Deterministic rational sampling on the scaling hyperplane comparing two
/// condition sets. The two printed example points are always probed when the
/// arity admits them.
CompareReport compare_condition_sets(MlfiConditionSet a, MlfiConditionSet b,
                                     const CompareConfig& cfg);

/// The two pinned probe points (bilinear, k = 1).
MlfiIndexPoint pinned_komori_furuya_only_point();
MlfiIndexPoint pinned_thm41_only_point();

// Exact slack helpers shared with the witness module.
Rational scaling_slack(const IndexPoint& idx, int k);                        // sum - 2
Rational hyper_slack(const IndexPoint& idx, int k, std::size_t ell);         // sum_{j!=ell} - 1
Rational index_slack(const IndexPoint& idx, std::size_t ell);                // sum_{j!=ell} lambda_j
Rational interpolation_slack(const IndexPoint& idx);                         // sum 1/p_j - 1

}  // namespace blf
