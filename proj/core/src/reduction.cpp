#include "blforms/reduction.hpp"

#include "blforms/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace blf {

namespace {

std::size_t negative_support(const std::vector<Rational>& xs) {
  std::size_t n = 0;
  for (const auto& x : xs)
    if (x < 0) ++n;
  return n;
}

std::size_t support(const std::vector<Rational>& xs) {
  std::size_t n = 0;
  for (const auto& x : xs)
    if (x != 0) ++n;
  return n;
}

void require_index_condition(const std::vector<Rational>& lambda) {
  for (std::size_t ell = 0; ell < lambda.size(); ++ell) {
    Rational s = 0;
    for (std::size_t j = 0; j < lambda.size(); ++j)
      if (j != ell) s += lambda[j];
    if (s < 0)
      throw PreconditionError("index condition violated at ell=" + std::to_string(ell) +
                              ": sum_{j != ell} lambda_j = " + rational_to_string(s) + " < 0");
  }
}

}  // namespace

ReductionCertificate reduce(const std::vector<Rational>& lambda, const VectorFamily& fam) {
  if (lambda.size() != fam.size())
    throw InputError("lambda has " + std::to_string(lambda.size()) + " entries but family has " +
                     std::to_string(fam.size()) + " vectors");
  require_index_condition(lambda);

  const std::size_t n = lambda.size();
  ReductionCertificate cert{fam, lambda, {}, {}, 0};
  cert.nodes.push_back({std::vector<Rational>(n, Rational(0))});

  // Depth-first, beta branch first, so the leaf order is deterministic.
  struct Frame {
    int node;
    int depth;
    double constant;
  };
  std::vector<Frame> stack{{0, 0, 1.0}};
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    std::vector<Rational> residual(n);
    const std::vector<Rational> alpha = cert.nodes[fr.node].alpha;
    for (std::size_t j = 0; j < n; ++j) residual[j] = lambda[j] - alpha[j];

    std::size_t j0 = n;
    for (std::size_t j = 0; j < n; ++j)
      if (residual[j] < 0) { j0 = j; break; }

    if (j0 == n) {
      cert.depth = std::max(cert.depth, fr.depth);
      cert.leaves.push_back({fr.node, alpha, fr.constant, std::nullopt});
      continue;
    }

    std::size_t j1 = n, j2 = n;
    for (std::size_t j = 0; j < n; ++j)
      if (residual[j] > 0) { j1 = j; break; }
    assert(j1 < n && "averaging the index conditions guarantees a positive residual");
    for (std::size_t j = 0; j < n; ++j)
      if (j != j1 && residual[j] > 0) { j2 = j; break; }
    assert(j2 < n && "index condition with m = j1 guarantees a second positive residual");

    Rational delta = alpha[j0] - lambda[j0];
    assert(delta > 0);
    auto [c1, c2] = fam.expand_in_basis(j0, j1, j2);

    std::vector<Rational> beta = alpha;
    beta[j0] = lambda[j0];
    beta[j1] = alpha[j1] + delta;
    std::vector<Rational> gamma = alpha;
    gamma[j0] = lambda[j0];
    gamma[j2] = alpha[j2] + delta;

    const double d = to_double(delta);
    const double factor_beta = std::pow(2.0, d) * std::pow(std::abs(to_double(c1)), d);
    const double factor_gamma = std::pow(2.0, d) * std::pow(std::abs(to_double(c2)), d);

    int beta_id = static_cast<int>(cert.nodes.size());
    cert.nodes.push_back({std::move(beta)});
    int gamma_id = static_cast<int>(cert.nodes.size());
    cert.nodes.push_back({std::move(gamma)});

    SubstitutionNode& node = cert.nodes[fr.node];
    node.beta_child = beta_id;
    node.gamma_child = gamma_id;
    node.j0 = j0;
    node.j1 = j1;
    node.j2 = j2;
    node.delta = delta;
    node.c1 = c1;
    node.c2 = c2;

    // Push gamma first so beta is processed first (leaf order).
    stack.push_back({gamma_id, fr.depth + 1, fr.constant * factor_gamma});
    stack.push_back({beta_id, fr.depth + 1, fr.constant * factor_beta});
  }
  return cert;
}

ConditionVerdict verify_certificate(const ReductionCertificate& cert) {
  ConditionVerdict v("certificate");
  const std::size_t n = cert.source_lambda.size();
  const std::vector<Rational>& lambda = cert.source_lambda;

  if (n != cert.fam.size()) {
    v.check_eq("arity", std::nullopt, Rational(static_cast<long>(n)) -
                                          Rational(static_cast<long>(cert.fam.size())));
    return v;
  }
  if (cert.nodes.empty()) {
    v.check_ge("nonempty", std::nullopt, Rational(-1));
    return v;
  }

  // Root must carry the zero shift.
  for (std::size_t j = 0; j < n; ++j)
    v.check_eq("root_zero", j, cert.nodes[0].alpha[j]);

  // Walk the tree re-deriving depth and the leaf set.
  struct Frame {
    int node;
    int depth;
    std::set<std::size_t> used_j0;
  };
  std::size_t reached_leaves = 0;
  int max_depth = 0;
  std::vector<Frame> stack{{0, 0, {}}};
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    const SubstitutionNode& node = cert.nodes.at(fr.node);
    if (node.alpha.size() != n) {
      v.check_ge("alpha_arity", std::nullopt, Rational(-1));
      continue;
    }
    std::vector<Rational> residual(n);
    for (std::size_t j = 0; j < n; ++j) residual[j] = lambda[j] - node.alpha[j];

    // Averaging identity and the per-m index conditions hold at every node.
    Rational total = 0;
    for (const auto& r : residual) total += r;
    v.check_ge("node_average", std::nullopt, total);
    for (std::size_t m = 0; m < n; ++m)
      v.check_ge("index2", m, total - residual[m]);
    // Z: the shifts always sum to zero.
    Rational alpha_sum = 0;
    for (const auto& a : node.alpha) alpha_sum += a;
    v.check_eq("zero_sum", std::nullopt, alpha_sum);

    if (node.is_leaf()) {
      ++reached_leaves;
      max_depth = std::max(max_depth, fr.depth);
      for (std::size_t j = 0; j < n; ++j) {
        v.check_ge("p_nonneg", j, residual[j]);
        Rational lam_plus = lambda[j] > 0 ? lambda[j] : Rational(0);
        v.check_ge("p_one", j, lam_plus - residual[j]);
      }
      continue;
    }

    // Split structure.
    bool shape_ok = node.gamma_child >= 0 && node.j1 != node.j2 && node.j0 != node.j1 &&
                    node.j0 != node.j2 && node.j0 < n && node.j1 < n && node.j2 < n &&
                    node.beta_child < static_cast<int>(cert.nodes.size()) &&
                    node.gamma_child < static_cast<int>(cert.nodes.size());
    v.check_ge("split_shape", std::nullopt, Rational(shape_ok ? 0 : -1));
    if (!shape_ok) continue;

    v.check_ge("split_j0_negative", node.j0, -residual[node.j0], /*strict=*/true);
    v.check_ge("split_j1_positive", node.j1, residual[node.j1], /*strict=*/true);
    v.check_ge("split_j2_positive", node.j2, residual[node.j2], /*strict=*/true);
    v.check_eq("split_delta", std::nullopt, node.delta - (node.alpha[node.j0] - lambda[node.j0]));
    v.check_ge("split_delta_positive", std::nullopt, node.delta, /*strict=*/true);

    // Basis expansion v_{j0} = c1 v_{j1} + c2 v_{j2}, exactly.
    const Vec2& v0 = cert.fam.vector(node.j0);
    const Vec2& v1 = cert.fam.vector(node.j1);
    const Vec2& v2 = cert.fam.vector(node.j2);
    v.check_eq("split_basis_x", std::nullopt, node.c1 * v1.x + node.c2 * v2.x - v0.x);
    v.check_eq("split_basis_y", std::nullopt, node.c1 * v1.y + node.c2 * v2.y - v0.y);

    // Children differ from alpha exactly as the displayed beta / gamma do,
    // and their residual supports drop j0.
    auto check_child = [&](int child, std::size_t raised) {
      const SubstitutionNode& c = cert.nodes[child];
      if (c.alpha.size() != n) {
        v.check_ge("alpha_arity", std::nullopt, Rational(-1));
        return;
      }
      for (std::size_t j = 0; j < n; ++j) {
        Rational expect = node.alpha[j];
        if (j == node.j0) expect = lambda[j];
        if (j == raised) expect = node.alpha[j] + node.delta;
        v.check_eq("child_alpha", j, c.alpha[j] - expect);
      }
      std::size_t child_supp = 0, node_supp = support(residual);
      for (std::size_t j = 0; j < n; ++j)
        if (lambda[j] - c.alpha[j] != 0) ++child_supp;
      v.check_ge("support_shrink", std::nullopt,
                 Rational(static_cast<long>(node_supp)) - 1 -
                     Rational(static_cast<long>(child_supp)));
    };
    check_child(node.beta_child, node.j1);
    check_child(node.gamma_child, node.j2);

    Frame beta_frame{node.beta_child, fr.depth + 1, fr.used_j0};
    beta_frame.used_j0.insert(node.j0);
    // Each root-to-leaf path consumes distinct j0 indices.
    v.check_ge("distinct_j0", node.j0, Rational(fr.used_j0.count(node.j0) ? -1 : 0));
    Frame gamma_frame = beta_frame;
    gamma_frame.node = node.gamma_child;
    stack.push_back(std::move(gamma_frame));
    stack.push_back(std::move(beta_frame));
  }

  // Leaf records match reachable leaves; bounds from the termination
  // argument. The binary split on distinct indices per path gives
  // L <= 2^depth and depth <= |supp(lambda)|.
  v.check_eq("leaf_count_matches", std::nullopt,
             Rational(static_cast<long>(cert.leaves.size())) -
                 Rational(static_cast<long>(reached_leaves)));
  v.check_ge("depth_le_support", std::nullopt,
             Rational(static_cast<long>(support(lambda))) - max_depth);
  double bound = std::pow(2.0, max_depth);
  v.check_ge("leaves_le_2_pow_depth", std::nullopt,
             Rational(static_cast<long>(bound)) -
                 Rational(static_cast<long>(cert.leaves.size())));

  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    const auto& leaf = cert.leaves[i];
    bool node_ok = leaf.node >= 0 && leaf.node < static_cast<int>(cert.nodes.size()) &&
                   cert.nodes[leaf.node].is_leaf() && cert.nodes[leaf.node].alpha == leaf.alpha;
    v.check_ge("leaf_record", i, Rational(node_ok ? 0 : -1));
    v.check_ge("leaf_constant_positive", i,
               Rational(leaf.constant > 0 && std::isfinite(leaf.constant) ? 0 : -1));
  }
  return v;
}

PointwiseReport verify_pointwise(const ReductionCertificate& cert,
                                 const std::vector<std::vector<double>>& sample_points) {
  const std::size_t n = cert.source_lambda.size();
  const int k = cert.fam.k();
  PointwiseReport report;

  // |v_j . x| for x in R^{2k}: Euclidean norm of the k-vector
  // v^1 x^1_m + v^2 x^2_m.
  auto dot_norm = [&](const Vec2& v, const std::vector<double>& x) {
    double vx = to_double(v.x), vy = to_double(v.y);
    double s = 0;
    for (int m = 0; m < k; ++m) {
      double c = vx * x[m] + vy * x[k + m];
      s += c * c;
    }
    return std::sqrt(s);
  };

  for (const auto& x : sample_points) {
    if (x.size() != static_cast<std::size_t>(2 * k))
      throw InputError("sample point has wrong dimension");
    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = dot_norm(cert.fam.vector(j), x);

    for (const auto& node : cert.nodes) {
      if (node.is_leaf()) continue;
      double d = to_double(node.delta);
      double lhs = std::pow(norms[node.j0], d);
      double rhs = std::pow(2.0, d) * (std::pow(std::abs(to_double(node.c1)), d) *
                                           std::pow(norms[node.j1], d) +
                                       std::pow(std::abs(to_double(node.c2)), d) *
                                           std::pow(norms[node.j2], d));
      ++report.checks;
      if (lhs > 0) report.worst_slack = std::max(report.worst_slack, (lhs - rhs) / lhs);
    }

    // Telescoped bound: the root weight (identically 1) is dominated by the
    // constant-weighted sum of leaf weights.
    double rhs = 0;
    for (const auto& leaf : cert.leaves) {
      double w = leaf.constant;
      for (std::size_t j = 0; j < n; ++j) w *= std::pow(norms[j], to_double(leaf.alpha[j]));
      rhs += w;
    }
    ++report.checks;
    report.worst_slack = std::max(report.worst_slack, 1.0 - rhs);
    ++report.samples;
  }
  return report;
}

PointwiseReport verify_pointwise(const ReductionCertificate& cert, std::uint64_t seed,
                                 std::size_t count, double box) {
  const int dims = 2 * cert.fam.k();
  Rng rng(Rng::derive(seed, 0x50574953));
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      std::vector<double> x(dims);
      for (auto& c : x) c = rng.next_in(-box, box);
      bool clear = true;
      for (std::size_t j = 0; j < cert.fam.size() && clear; ++j) {
        const Vec2& v = cert.fam.vector(j);
        double vx = to_double(v.x), vy = to_double(v.y);
        for (int m = 0; m < cert.fam.k(); ++m) {
          if (std::abs(vx * x[m] + vy * x[cert.fam.k() + m]) < 1e-12 * box) {
            clear = false;
            break;
          }
        }
      }
      if (clear) {
        pts.push_back(std::move(x));
        break;
      }
      if (attempt == 99) throw InputError("could not sample away from the kernel lines");
    }
  }
  return verify_pointwise(cert, pts);
}

DerivedExponents derived_exponents(const IndexPoint& idx, const VectorFamily& fam,
                                   const std::vector<Rational>& leaf_alpha) {
  if (idx.size() != fam.size() || leaf_alpha.size() != fam.size())
    throw InputError("derived_exponents: arity mismatch");
  const int k = fam.k();
  const std::size_t n = idx.size();

  // Preconditions: scaling, strict hyper, index, open range on the p's, and
  // the leaf conditions on alpha.
  ConditionVerdict pre("derived_exponents_pre");
  pre.check_eq("scaling", std::nullopt, scaling_slack(idx, k));
  for (std::size_t ell = 0; ell < n; ++ell)
    pre.check_ge("hyper_strict", ell, hyper_slack(idx, k, ell), /*strict=*/true);
  for (std::size_t ell = 0; ell < n; ++ell) pre.check_ge("index", ell, index_slack(idx, ell));
  for (std::size_t j = 0; j < n; ++j) {
    pre.check_ge("p_open_lo", j, idx.entry(j).inv_p, /*strict=*/true);
    pre.check_ge("p_open_hi", j, Rational(1) - idx.entry(j).inv_p, /*strict=*/true);
  }
  Rational alpha_sum = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational residual = idx.entry(j).lam - leaf_alpha[j];
    pre.check_ge("p_nonneg", j, residual);
    Rational lam_plus = idx.entry(j).lam > 0 ? idx.entry(j).lam : Rational(0);
    pre.check_ge("p_one", j, lam_plus - residual);
    alpha_sum += leaf_alpha[j];
  }
  pre.check_eq("zero_sum", std::nullopt, alpha_sum);
  if (!pre.satisfied()) throw PreconditionError(pre.describe());

  DerivedExponents out{{}, ConditionVerdict("derived_exponents")};
  out.inv_q.reserve(n);
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational q = idx.entry(j).inv_p + (idx.entry(j).lam - leaf_alpha[j]) / k;
    total += q;
    out.inv_q.push_back(std::move(q));
  }
  out.checks.check_eq("la_scale", std::nullopt, total - 2);
  for (std::size_t ell = 0; ell < n; ++ell)
    out.checks.check_ge("la_hyper", ell, total - out.inv_q[ell] - 1, /*strict=*/true);
  for (std::size_t j = 0; j < n; ++j) {
    out.checks.check_ge("q_open_lo", j, out.inv_q[j], /*strict=*/true);
    out.checks.check_ge("q_open_hi", j, Rational(1) - out.inv_q[j], /*strict=*/true);
  }
  assert(out.checks.satisfied() && "the bookkeeping identities are theorems");
  return out;
}

void attach_exponents(ReductionCertificate& cert, const IndexPoint& idx) {
  for (auto& leaf : cert.leaves)
    leaf.q_exponents = derived_exponents(idx, cert.fam, leaf.alpha).inv_q;
}

ConditionVerdict classify_lorentz(const IndexPoint& idx, const VectorFamily& fam) {
  if (!idx.has_lorentz()) throw InputError("classify_lorentz: Lorentz exponents missing");
  if (idx.size() != fam.size()) throw InputError("classify_lorentz: arity mismatch");
  const int k = fam.k();
  ConditionVerdict v("lorentz_sufficient");
  v.check_eq("scaling", std::nullopt, scaling_slack(idx, k));
  for (std::size_t ell = 0; ell < idx.size(); ++ell)
    v.check_ge("hyper_strict", ell, hyper_slack(idx, k, ell), /*strict=*/true);
  for (std::size_t ell = 0; ell < idx.size(); ++ell)
    v.check_ge("index", ell, index_slack(idx, ell));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    v.check_ge("p_open_lo", j, idx.entry(j).inv_p, /*strict=*/true);
    v.check_ge("p_open_hi", j, Rational(1) - idx.entry(j).inv_p, /*strict=*/true);
  }
  Rational r_sum = 0;
  for (const auto& r : idx.lorentz()) r_sum += r;
  v.check_ge("lorentz_interpolation", std::nullopt, r_sum - 1);
  return v;
}

}  // namespace blf
