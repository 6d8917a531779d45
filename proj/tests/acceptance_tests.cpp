// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include "blforms/conditions.hpp"
#include "blforms/form_eval.hpp"
#include "blforms/parallel.hpp"
#include "blforms/piecewise_power.hpp"
#include "blforms/reduction.hpp"
#include "blforms/rng.hpp"
#include "blforms/witness.hpp"
#include "test_support.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace blf;
using namespace blf::testing;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> run;
};

bool approx(double actual, double expected, double tol) {
  return std::abs(actual - expected) <= tol;
}

// --- 1. paper example pins ------------------------------------------------

bool criterion_pins(std::string& detail) {
  MlfiIndexPoint kf_only = pinned_komori_furuya_only_point();
  ConditionVerdict thm = check_mlfi(kf_only);
  bool ok = check_komori_furuya(kf_only).satisfied() && !thm.satisfied() &&
            thm.slack("another_strict", std::size_t{2}) == 0;

  MlfiIndexPoint thm_only = pinned_thm41_only_point();
  ConditionVerdict kf = check_komori_furuya(thm_only);
  ok = ok && check_mlfi(thm_only).satisfied() && !kf.satisfied() &&
       kf.slack("kf_lambda_le", std::size_t{2}) < 0;
  detail = "both printed points land in the expected difference sets";
  return ok;
}

// --- 2. reduction soundness over 10^4 seeded inputs -------------------------

bool criterion_reduction_soundness(std::string& detail) {
  const std::size_t kRuns = 10'000;
  std::atomic<std::size_t> failures{0};
  std::atomic<std::size_t> pointwise_violations{0};
  parallel_for(kRuns, [&](std::size_t i) {
    Rng rng(Rng::derive(2026, i));
    std::size_t n = 3 + rng.next_below(4);  // N in 3..6
    VectorFamily fam = random_family(rng, n);
    std::vector<Rational> lam = random_index_lambda(rng, n, 60);
    ReductionCertificate cert = reduce(lam, fam);
    bool ok = verify_certificate(cert).satisfied() &&
              cert.leaves.size() <= (std::size_t{1} << n) &&
              cert.depth <= static_cast<int>(n);
    if (!ok) {
      ++failures;
      return;
    }
    PointwiseReport pw = verify_pointwise(cert, Rng::derive(77, i), 1000);
    if (pw.worst_slack > 1e-9) ++pointwise_violations;
  });
  std::ostringstream os;
  os << failures.load() << " structural failures, " << pointwise_violations.load()
     << " pointwise violations over " << kRuns << " runs";
  detail = os.str();
  return failures == 0 && pointwise_violations == 0;
}

// --- 3. hand-executed reduction --------------------------------------------

bool criterion_hand_reduction(std::string& detail) {
  ReductionCertificate cert =
      reduce({Rational(-1), Rational(1), Rational(1)}, standard_family());
  std::vector<Rational> beta{Rational(-1), Rational(1), Rational(0)};
  std::vector<Rational> gamma{Rational(-1), Rational(0), Rational(1)};
  bool ok = cert.leaves.size() == 2 && cert.leaves[0].alpha == beta &&
            cert.leaves[1].alpha == gamma && verify_certificate(cert).satisfied();
  detail = "leaves {(-1,1,0), (-1,0,1)} under smallest-index tie-breaking";
  return ok;
}

// --- 4. exponent bookkeeping ------------------------------------------------

bool criterion_exponent_bookkeeping(std::string& detail) {
  std::size_t leaves_checked = 0, failures = 0;
  Rng rng(404);
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 3 + rng.next_below(3);
    VectorFamily fam = random_family(rng, n);
    IndexPoint idx = random_sufficient_point(rng, n, 1);
    std::vector<Rational> lam;
    for (std::size_t j = 0; j < n; ++j) lam.push_back(idx.entry(j).lam);
    ReductionCertificate cert = reduce(lam, fam);
    for (const auto& leaf : cert.leaves) {
      DerivedExponents d = derived_exponents(idx, fam, leaf.alpha);
      Rational total = 0;
      bool ok = true;
      for (const auto& q : d.inv_q) {
        total += q;
        if (!(q > 0 && q < 1)) ok = false;
      }
      if (total != 2) ok = false;
      for (std::size_t ell = 0; ell < n; ++ell)
        if (!(total - d.inv_q[ell] > 1)) ok = false;
      if (!d.checks.satisfied()) ok = false;
      ++leaves_checked;
      if (!ok) ++failures;
    }
  }
  std::ostringstream os;
  os << leaves_checked << " leaves checked, " << failures << " failures";
  detail = os.str();
  return failures == 0 && leaves_checked >= 1000;
}

// --- 5. oracle equivalence ---------------------------------------------------

FormInstance random_indicator_instance(Rng& rng) {
  VectorFamily fam = random_family(rng, 3);
  std::vector<PiecewisePowerFunction> fns;
  for (int j = 0; j < 3; ++j) {
    std::vector<PowerPiece> pieces;
    int count = 1 + static_cast<int>(rng.next_below(2));
    double cursor = static_cast<double>(rng.next_below(8)) / 8.0;
    for (int p = 0; p < count; ++p) {
      double width = (1.0 + static_cast<double>(rng.next_below(8))) / 4.0;
      double c = (1.0 + static_cast<double>(rng.next_below(8))) / 4.0;
      pieces.push_back({cursor, cursor + width, c, 0.0});
      cursor += width + static_cast<double>(rng.next_below(4)) / 8.0;
    }
    fns.push_back(PiecewisePowerFunction(1, std::move(pieces)));
  }
  return FormInstance(std::move(fam), std::move(fns));
}

bool criterion_oracle_equivalence(std::string& detail) {
  const int kInstances = 200;
  int agreeing = 0;
  for (int i = 0; i < kInstances; ++i) {
    Rng rng(Rng::derive(505, i));
    FormInstance inst = random_indicator_instance(rng);
    double exact = evaluate_form_exact(inst).value;
    McOptions opts;
    opts.seed = Rng::derive(606, i);
    opts.budget = 1'000'000;
    EvalResult mc = evaluate_form_mc(inst, opts);
    if (std::abs(mc.value - exact) <= 3 * mc.error_bound) ++agreeing;
  }
  std::ostringstream os;
  os << agreeing << "/" << kInstances << " within 3x the 99% bound";
  detail = os.str();
  return agreeing >= 190;
}

// --- 6. exact polygon value ---------------------------------------------------

bool criterion_exact_value(std::string& detail) {
  std::vector<PiecewisePowerFunction> fns(3, PiecewisePowerFunction::indicator(1, 0, 1));
  Rational area = evaluate_form_exact_rational(FormInstance(standard_family(), fns));
  detail = "area = " + rational_to_string(area);
  return area == Rational(3);
}

// --- 7. tensorization ---------------------------------------------------------

bool criterion_tensorization(std::string& detail) {
  int pass = 0;
  const int kInstances = 20;
  for (int i = 0; i < kInstances; ++i) {
    Rng rng(Rng::derive(707, i));
    FormInstance inst = random_indicator_instance(rng);
    double base = evaluate_form_exact(inst).value;
    if (base <= 0) {
      ++pass;  // zero tensor-squares to zero
      continue;
    }
    VectorFamily fam2(inst.fam.vectors(), 2);
    McOptions opts;
    opts.seed = Rng::derive(808, i);
    opts.budget = 400'000;
    EvalResult mc = evaluate_form_mc_tensor(fam2, inst.functions, opts);
    double expected = base * base;
    if (std::abs(mc.value - expected) <= std::max(4 * mc.error_bound, 0.02 * expected)) ++pass;
  }
  std::ostringstream os;
  os << pass << "/" << kInstances << " tensor squares match";
  detail = os.str();
  return pass == kInstances;
}

// --- 8. scaling necessity -------------------------------------------------------

bool criterion_scaling_witness(std::string& detail) {
  WitnessSpec off;
  off.kind = WitnessKind::Scaling;
  off.fam = standard_family();
  off.idx = uniform_point(3, Rational(1, 2), Rational(1, 2));
  off.ladder = Ladder{1.0 / 8, 1.0 / 1024, 8};  // the {2^3..2^10} grid toward zero
  WitnessReport grow = run_witness(off);
  bool ok = grow.predicted_slope == Rational(-1) &&
            approx(grow.measured_slope, -1.0, 0.05) &&
            grow.verdict == WitnessVerdict::UnboundedWitness;

  WitnessSpec on;
  on.kind = WitnessKind::Scaling;
  on.fam = standard_family();
  on.idx = uniform_point(3, Rational(1, 2), Rational(1, 6));
  WitnessReport flat = run_witness(on);
  ok = ok && flat.predicted_slope == 0 && std::abs(flat.measured_slope) <= 0.05 &&
       flat.verdict == WitnessVerdict::Consistent;
  std::ostringstream os;
  os << "slopes " << grow.measured_slope << " (predicted -1), " << flat.measured_slope
     << " (predicted 0)";
  detail = os.str();
  return ok;
}

// --- 9. index necessity -----------------------------------------------------------

bool criterion_index_witness(std::string& detail) {
  WitnessSpec spec;
  spec.kind = WitnessKind::Index;
  spec.fam = standard_family();
  spec.ell = 2;
  spec.idx = IndexPoint({{Rational(3, 4), Rational(-1, 4)},
                         {Rational(3, 4), Rational(-1, 4)},
                         {Rational(1, 2), Rational(1, 2)}});
  WitnessReport report = run_witness(spec);
  std::ostringstream os;
  os << "measured slope " << report.measured_slope << ", predicted 1/2, verdict "
     << to_string(report.verdict);
  detail = os.str();
  return report.predicted_slope == Rational(1, 2) &&
         approx(report.measured_slope, 0.5, 0.05) &&
         report.verdict == WitnessVerdict::UnboundedWitness;
}

// --- 10. interpolation necessity ----------------------------------------------------

bool criterion_interpolation_witness(std::string& detail) {
  WitnessSpec spec;
  spec.kind = WitnessKind::Interpolation;
  spec.idx = uniform_point(3, Rational(1, 4), Rational(0));
  spec.epsilon = Rational(1, 10);
  WitnessReport report = run_witness(spec);
  std::ostringstream os;
  os << "partial-sum growth exponent " << report.measured_slope << " (target 0.175 +- 0.03)";
  detail = os.str();
  return approx(report.measured_slope, 0.175, 0.03) &&
         report.verdict == WitnessVerdict::UnboundedWitness;
}

// --- 11. weak-norm law ------------------------------------------------------------

bool criterion_weak_norm(std::string& detail) {
  const double root2 = std::sqrt(2.0);
  double worst = 0;
  for (double trunc : {1.0, 64.0, 16384.0, 1048576.0}) {
    PiecewisePowerFunction f = PiecewisePowerFunction::power(1, -0.5, 0.0, trunc);
    double norm = lorentz_norm(f, Rational(1, 2), Rational(0), Rational(0));
    worst = std::max(worst, std::abs(norm - root2));
  }
  std::ostringstream os;
  os << "max |norm - sqrt 2| = " << worst;
  detail = os.str();
  return worst <= 1e-9;
}

// --- 12. beta identity --------------------------------------------------------------

bool criterion_beta_identity(std::string& detail) {
  BetaIdentityReport report =
      beta_identity_check(Rational(3, 5), Rational(7, 10), {1.0, 2.0, 4.0});
  std::ostringstream os;
  os << "max relative deviation " << report.max_rel_deviation;
  detail = os.str();
  return !report.diverged && report.max_rel_deviation <= 1e-3;
}

// --- 13. property suites --------------------------------------------------------------

bool criterion_property_suites(std::string& detail) {
  VectorFamily fam = standard_family();
  Rng rng(1313);

  // Sufficiency implies necessity on 10^4 seeded points.
  std::size_t sufficient_seen = 0;
  for (int i = 0; i < 10'000; ++i) {
    IndexPoint idx = (i % 2 == 0) ? random_box_point(rng, 3)
                                  : random_sufficient_point(rng, 3, 1);
    if (check_sufficient(idx, fam).satisfied()) {
      ++sufficient_seen;
      if (!check_necessary(idx, fam).satisfied()) {
        detail = "implication chain broken";
        return false;
      }
    }
  }
  if (sufficient_seen < 5000) {
    detail = "sampler produced too few sufficient points";
    return false;
  }

  // Convexity of the sufficient region under rational convex combinations.
  for (int i = 0; i < 500; ++i) {
    IndexPoint a = random_sufficient_point(rng, 3, 1);
    IndexPoint b = random_sufficient_point(rng, 3, 1);
    IndexPoint mid = segment_midpoint(a, b, Rational(rng.next_int(0, 16), 16));
    if (classify(mid, fam) != Classification::Sufficient) {
      detail = "sufficient set not convex under midpoints";
      return false;
    }
  }

  // Subspace system vs scaling + complement sums on the denominator-12 grid.
  std::vector<Rational> grid;
  for (long den = 1; den <= 12; ++den)
    for (long num = 0; num <= den; ++num) grid.push_back(Rational(num, den));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::size_t grid_points = 0;
  for (const auto& a : grid) {
    for (const auto& b : grid) {
      Rational c = Rational(2) - a - b;
      if (c < 0 || c > 1) continue;
      IndexPoint idx({{a, Rational(0)}, {b, Rational(0)}, {c, Rational(0)}});
      ConditionVerdict sub = check_subspace_condition({a, b, c}, fam);
      ConditionVerdict nec = check_necessary(idx, fam);
      bool agree = sub.satisfied() == nec.satisfied();
      for (std::size_t ell = 0; ell < 3 && agree; ++ell)
        agree = sub.slack("subspace", ell) == nec.slack("hyper", ell);
      if (!agree) {
        detail = "subspace system disagrees with the necessity inequalities";
        return false;
      }
      ++grid_points;
    }
  }

  // Norm dilation homogeneity on randomized closed-form paths.
  for (int i = 0; i < 200; ++i) {
    double a = 0.5 * rng.next_double();
    double b = a + 0.25 + rng.next_double();
    PiecewisePowerFunction f(1, {{a, b, 1.0, -0.5 + rng.next_double()}});
    Rational inv_p(1 + static_cast<long>(rng.next_below(5)), 6);
    Rational lam(static_cast<long>(rng.next_below(5)) - 2, 4);
    double scale = std::pow(2.0, 1 + static_cast<int>(rng.next_below(6)));
    double base = lorentz_norm(f, inv_p, inv_p, lam);
    if (!std::isfinite(base) || base == 0) continue;
    double dilated = lorentz_norm(f.dilated(scale), inv_p, inv_p, lam);
    double predicted = std::pow(scale, to_double(inv_p) + to_double(lam)) * base;
    if (std::abs(dilated - predicted) > 1e-10 * predicted) {
      detail = "dilation homogeneity violated";
      return false;
    }
  }

  std::ostringstream os;
  os << "implication (" << sufficient_seen << " sufficient), convexity, subspace grid ("
     << grid_points << " points), homogeneity";
  detail = os.str();
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "paper example pins (Komori-Furuya vs Thm 4.1)", criterion_pins},
      {2, "reduction soundness on 10^4 seeded inputs", criterion_reduction_soundness},
      {3, "hand-executed reduction for (-1,1,1)", criterion_hand_reduction},
      {4, "exponent bookkeeping on certificate leaves", criterion_exponent_bookkeeping},
      {5, "Monte Carlo vs exact polygon oracle", criterion_oracle_equivalence},
      {6, "exact value of the unit-indicator instance", criterion_exact_value},
      {7, "tensorization on tensor squares", criterion_tensorization},
      {8, "scaling necessity witnesses", criterion_scaling_witness},
      {9, "index necessity witness", criterion_index_witness},
      {10, "interpolation necessity witness", criterion_interpolation_witness},
      {11, "weak-norm law for truncated powers", criterion_weak_norm},
      {12, "beta identity for the convolution of powers", criterion_beta_identity},
      {13, "property suites", criterion_property_suites},
  };

  int failed = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("%s criterion %2d: %s [%s] (%lld ms)\n", ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), detail.c_str(), static_cast<long long>(ms));
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
