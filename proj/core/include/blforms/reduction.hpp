#pragma once

#include "blforms/conditions.hpp"
#include "blforms/index_point.hpp"
#include "blforms/vector_family.hpp"
#include "blforms/verdict.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace blf {

/// One node of the substitution tree. A split replaces this node's alpha by
/// two children: the beta child sets alpha_{j0} = lambda_{j0} and raises
/// alpha_{j1} by delta; the gamma child does the same at j2. delta is
/// alpha_{j0} - lambda_{j0} > 0 and v_{j0} = c1 v_{j1} + c2 v_{j2} exactly.
struct SubstitutionNode {
  std::vector<Rational> alpha;
  bool is_leaf() const { return beta_child < 0; }
  // Split data; unset on leaves.
  int beta_child = -1;
  int gamma_child = -1;
  std::size_t j0 = 0, j1 = 0, j2 = 0;
  Rational delta;
  Rational c1, c2;
};

struct CertificateLeaf {
  int node = -1;
  std::vector<Rational> alpha;
  /// Product along the root-to-leaf path of the branch factors
  /// 2^delta |c|^delta; makes the pointwise bound checkable.
  double constant = 1.0;
  /// 1/q_j from the exponent bookkeeping; present once an index point has
  /// been attached (reduce alone has no p's).
  std::optional<std::vector<Rational>> q_exponents;
};

/// The verifiable output of the substitution algorithm: a binary tree whose
/// leaves carry weight shifts alpha with lambda_j - alpha_j in [0, lambda_j^+]
/// and sum alpha_j = 0, plus explicit pointwise constants.
struct ReductionCertificate {
  VectorFamily fam;
  std::vector<Rational> source_lambda;
  std::vector<SubstitutionNode> nodes;  // nodes[0] is the root
  std::vector<CertificateLeaf> leaves;  // depth-first, beta branch first
  int depth = 0;
};

/// Runs the substitution algorithm. Requires lambda to satisfy the index
/// condition sum_{j != ell} lambda_j >= 0 for every ell (PreconditionError
/// naming the offending ell otherwise). Tie-breaking is deterministic:
/// j0 = smallest index with lambda_j - alpha_j < 0, j1 = smallest with
/// lambda_j - alpha_j > 0, j2 = smallest other positive index.
ReductionCertificate reduce(const std::vector<Rational>& lambda, const VectorFamily& fam);

/// Independent exact re-check of every structural invariant at every node
/// and leaf; does not trust the builder.
ConditionVerdict verify_certificate(const ReductionCertificate& cert);

struct PointwiseReport {
  /// Worst relative slack (LHS - RHS)/LHS over all split-node inequalities
  /// and the composed leaf-constant bound; <= 0 means no violation.
  double worst_slack = 0.0;
  std::size_t samples = 0;
  std::size_t checks = 0;
};

/// Checks the split inequality |v_{j0}.x|^delta <= 2^delta(|c1|^delta
/// |v_{j1}.x|^delta + |c2|^delta |v_{j2}.x|^delta) at every node, and that
/// the per-leaf constants dominate the telescoped product
/// 1 <= sum_l C_l prod_j |v_j.x|^{alpha_j^l}, over the given sample points.
PointwiseReport verify_pointwise(const ReductionCertificate& cert,
                                 const std::vector<std::vector<double>>& sample_points);

/// Seeded sampling wrapper: `count` points in [-box, box]^{2k}, resampled
/// away from the kernel lines v_j . x = 0 (tolerance 1e-12).
PointwiseReport verify_pointwise(const ReductionCertificate& cert, std::uint64_t seed,
                                 std::size_t count, double box = 10.0);

struct DerivedExponents {
  std::vector<Rational> inv_q;  // 1/q_j = 1/p_j + (lambda_j - alpha_j)/k
  ConditionVerdict checks;      // scaling / hyper / open-range of the 1/q_j
};

/// Exponent bookkeeping for one certificate leaf. Requires idx to satisfy
/// the sufficiency conditions (minus interpolation) with 1/p_j in (0,1) and
/// alpha to satisfy the leaf conditions; throws PreconditionError with exact
/// slacks otherwise. The returned exponents always satisfy sum 1/q_j = 2,
/// complement sums > 1 and 1/q_j in (0,1).
DerivedExponents derived_exponents(const IndexPoint& idx, const VectorFamily& fam,
                                   const std::vector<Rational>& leaf_alpha);

/// Fills every leaf's q_exponents for the given index point.
void attach_exponents(ReductionCertificate& cert, const IndexPoint& idx);

/// Sufficiency in the Lorentz scale: scaling, strict complement sums, index
/// condition and 1/p_j in (0,1) on the primary exponents, plus
/// sum 1/r_j >= 1 on the secondary ones. Setting r_j = p_j recovers
/// check_sufficient.
ConditionVerdict classify_lorentz(const IndexPoint& idx, const VectorFamily& fam);

}  // namespace blf
