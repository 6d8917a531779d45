#include "blforms/conditions.hpp"

#include "blforms/rng.hpp"

#include <string>
#include <utility>

namespace blf {

namespace {

void require_compatible(const IndexPoint& idx, const VectorFamily& fam) {
  if (idx.size() != fam.size())
    throw InputError("index point has " + std::to_string(idx.size()) + " entries but family has " +
                     std::to_string(fam.size()) + " vectors");
}

}  // namespace

Rational scaling_slack(const IndexPoint& idx, int k) {
  Rational s = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) s += idx.slot_sum(j, k);
  return s - 2;
}

Rational hyper_slack(const IndexPoint& idx, int k, std::size_t ell) {
  Rational s = 0;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (j != ell) s += idx.slot_sum(j, k);
  return s - 1;
}

Rational index_slack(const IndexPoint& idx, std::size_t ell) {
  Rational s = 0;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (j != ell) s += idx.entry(j).lam;
  return s;
}

Rational interpolation_slack(const IndexPoint& idx) {
  Rational s = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) s += idx.entry(j).inv_p;
  return s - 1;
}

ConditionVerdict check_sufficient(const IndexPoint& idx, const VectorFamily& fam) {
  require_compatible(idx, fam);
  const int k = fam.k();
  ConditionVerdict v("sufficient");
  v.check_eq("scaling", std::nullopt, scaling_slack(idx, k));
  for (std::size_t ell = 0; ell < idx.size(); ++ell)
    v.check_ge("hyper_strict", ell, hyper_slack(idx, k, ell), /*strict=*/true);
  for (std::size_t ell = 0; ell < idx.size(); ++ell)
    v.check_ge("index", ell, index_slack(idx, ell));
  v.check_ge("interpolation", std::nullopt, interpolation_slack(idx));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    v.check_ge("p_open_lo", j, idx.entry(j).inv_p, /*strict=*/true);
    v.check_ge("p_open_hi", j, Rational(1) - idx.entry(j).inv_p, /*strict=*/true);
  }
  return v;
}

ConditionVerdict check_necessary(const IndexPoint& idx, const VectorFamily& fam) {
  require_compatible(idx, fam);
  const int k = fam.k();
  ConditionVerdict v("necessary");
  v.check_eq("scaling", std::nullopt, scaling_slack(idx, k));
  for (std::size_t ell = 0; ell < idx.size(); ++ell)
    v.check_ge("hyper", ell, hyper_slack(idx, k, ell));
  for (std::size_t ell = 0; ell < idx.size(); ++ell)
    v.check_ge("index", ell, index_slack(idx, ell));
  v.check_ge("interpolation", std::nullopt, interpolation_slack(idx));
  // 1/p_j in [0,1] is an IndexPoint type invariant; nothing more to check.
  return v;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Sufficient: return "SUFFICIENT";
    case Classification::Boundary: return "BOUNDARY";
    case Classification::NecessaryFail: return "NECESSARY_FAIL";
  }
  return "?";
}

Classification classify(const IndexPoint& idx, const VectorFamily& fam) {
  if (check_sufficient(idx, fam).satisfied()) return Classification::Sufficient;
  if (!check_necessary(idx, fam).satisfied()) return Classification::NecessaryFail;
  return Classification::Boundary;
}

ConditionVerdict check_subspace_condition(const std::vector<Rational>& inv_ps,
                                          const VectorFamily& fam) {
  if (inv_ps.size() != fam.size())
    throw InputError("exponent list length differs from family size");
  for (std::size_t j = 0; j < inv_ps.size(); ++j)
    if (inv_ps[j] < 0 || inv_ps[j] > 1)
      throw InputError("1/p_" + std::to_string(j) + " outside [0,1]");

  Rational total = 0;
  for (const auto& q : inv_ps) total += q;

  ConditionVerdict v("subspace");
  // V = R^2: every dim(v_j . V) = 1, dim V = 2.
  v.check_ge("subspace_full", std::nullopt, total - 2);
  // Generic line: all dims 1, dim V = 1.
  v.check_ge("subspace_generic", std::nullopt, total - 1);
  // V = span(v_ell^perp): dim(v_ell . V) = 0 and, by the pairwise-basis
  // assumption, dim(v_j . V) = 1 for every other j.
  for (std::size_t ell = 0; ell < inv_ps.size(); ++ell) {
    Rational s = 0;
    for (std::size_t j = 0; j < inv_ps.size(); ++j)
      if (j != ell) s += inv_ps[j];
    v.check_ge("subspace", ell, s - 1);
  }
  return v;
}

IndexPoint segment_midpoint(const IndexPoint& a, const IndexPoint& b, const Rational& t) {
  if (a.size() != b.size()) throw InputError("index points have different arity");
  if (t < 0 || t > 1) throw InputError("interpolation parameter t must lie in [0,1]");
  Rational s = Rational(1) - t;
  std::vector<ExponentEntry> entries;
  entries.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    entries.push_back({s * a.entry(j).inv_p + t * b.entry(j).inv_p,
                       s * a.entry(j).lam + t * b.entry(j).lam});
  }
  std::optional<std::vector<Rational>> lorentz;
  if (a.has_lorentz() && b.has_lorentz()) {
    std::vector<Rational> lr;
    lr.reserve(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
      lr.push_back(s * a.lorentz()[j] + t * b.lorentz()[j]);
    lorentz = std::move(lr);
  }
  return IndexPoint(std::move(entries), std::move(lorentz));
}

ConditionVerdict check_mlfi(const MlfiIndexPoint& idx) {
  const int k = idx.k();
  ConditionVerdict v("thm41");

  Rational scale = idx.lam() / k;
  for (const auto& e : idx.entries()) scale += e.inv_p + e.lam / k;
  v.check_eq("mlfi_scaling", std::nullopt, scale - 2);

  // 0 < lambda/k < 1 is a type invariant; recorded for completeness.
  v.check_ge("mlfi_lambda_lo", std::nullopt, idx.lam(), /*strict=*/true);
  v.check_ge("mlfi_lambda_hi", std::nullopt, Rational(k) - idx.lam(), /*strict=*/true);

  for (std::size_t j = 0; j < idx.entries().size(); ++j)
    v.check_ge("mlfi_slot", j, Rational(1) - (idx.entry(j).inv_p + idx.entry(j).lam / k),
               /*strict=*/true);

  Rational interp = 0;
  for (const auto& e : idx.entries()) interp += e.inv_p;
  v.check_ge("mlfi_interpolation", std::nullopt, interp - 1);

  Rational lam_total = 0;
  for (const auto& e : idx.entries()) lam_total += e.lam;
  v.check_ge("mlfi_index", std::nullopt, lam_total);

  for (std::size_t ell = 0; ell < idx.entries().size(); ++ell) {
    Rational s = idx.lam();
    for (std::size_t j = 0; j < idx.entries().size(); ++j)
      if (j != ell) s += idx.entry(j).lam;
    v.check_ge("another_strict", ell, s, /*strict=*/true);
  }
  return v;
}

ConditionVerdict check_stein_weiss(const MlfiIndexPoint& idx) {
  if (idx.arity() != 1) throw InputError("Stein-Weiss conditions apply to N = 1 (two slots)");
  const int k = idx.k();
  ConditionVerdict v("stein_weiss");
  Rational scale = idx.entry(0).inv_p + idx.entry(1).inv_p +
                   (idx.entry(0).lam + idx.entry(1).lam + idx.lam()) / k;
  v.check_eq("sw_scaling", std::nullopt, scale - 2);
  for (std::size_t j = 0; j < 2; ++j) {
    v.check_ge("sw_p_open_lo", j, idx.entry(j).inv_p, /*strict=*/true);
    v.check_ge("sw_p_open_hi", j, Rational(1) - idx.entry(j).inv_p, /*strict=*/true);
  }
  v.check_ge("sw_lambda_lo", std::nullopt, idx.lam(), /*strict=*/true);
  v.check_ge("sw_lambda_hi", std::nullopt, Rational(k) - idx.lam(), /*strict=*/true);
  v.check_ge("sw_interpolation", std::nullopt,
             idx.entry(0).inv_p + idx.entry(1).inv_p - 1);
  for (std::size_t j = 0; j < 2; ++j)
    v.check_ge("sw_slot", j, Rational(1) - (idx.entry(j).inv_p + idx.entry(j).lam / k),
               /*strict=*/true);
  v.check_ge("sw_index", std::nullopt, idx.entry(0).lam + idx.entry(1).lam);
  return v;
}

ConditionVerdict check_grafakos(const MlfiIndexPoint& idx) {
  const int k = idx.k();
  ConditionVerdict v("grafakos");
  for (std::size_t j = 0; j < idx.entries().size(); ++j)
    v.check_eq("gr_weight_zero", j, idx.entry(j).lam);
  for (std::size_t j = 0; j < idx.entries().size(); ++j)
    v.check_ge("gr_p_range", j, Rational(1) - idx.entry(j).inv_p, /*strict=*/true);
  Rational scale = idx.lam() / k;
  for (const auto& e : idx.entries()) scale += e.inv_p;
  v.check_eq("gr_scaling", std::nullopt, scale - 2);
  return v;
}

ConditionVerdict check_komori_furuya(const MlfiIndexPoint& idx) {
  if (idx.arity() != 2) throw InputError("Komori-Furuya conditions apply to N = 2 (three slots)");
  const int k = idx.k();
  ConditionVerdict v("komori_furuya");
  Rational scale = idx.lam() / k;
  for (const auto& e : idx.entries()) scale += e.inv_p + e.lam / k;
  v.check_eq("kf_scaling", std::nullopt, scale - 2);
  for (std::size_t j = 0; j < 3; ++j)
    v.check_ge("kf_slot", j, Rational(1) - (idx.entry(j).inv_p + idx.entry(j).lam / k),
               /*strict=*/true);
  Rational interp = 0;
  for (const auto& e : idx.entries()) interp += e.inv_p;
  // The interpolation sum is part of the argument even though the original
  // statement omits it.
  v.check_ge("kf_interpolation", std::nullopt, interp - 1);
  v.check_ge("kf_index", std::nullopt,
             idx.entry(0).lam + idx.entry(1).lam + idx.entry(2).lam);
  v.check_ge("kf_kernel_index", std::nullopt,
             idx.lam() + idx.entry(1).lam + idx.entry(2).lam);
  for (std::size_t j = 1; j < 3; ++j)
    v.check_ge("kf_lambda_le", j, idx.lam() - idx.entry(j).lam);
  return v;
}

MlfiConditionSet mlfi_set_from_name(const std::string& name) {
  if (name == "thm41") return MlfiConditionSet::Thm41;
  if (name == "stein-weiss") return MlfiConditionSet::SteinWeiss;
  if (name == "grafakos") return MlfiConditionSet::Grafakos;
  if (name == "komori-furuya") return MlfiConditionSet::KomoriFuruya;
  throw InputError("unknown condition set '" + name +
                   "'; expected thm41|stein-weiss|grafakos|komori-furuya");
}

std::string to_string(MlfiConditionSet set) {
  switch (set) {
    case MlfiConditionSet::Thm41: return "thm41";
    case MlfiConditionSet::SteinWeiss: return "stein-weiss";
    case MlfiConditionSet::Grafakos: return "grafakos";
    case MlfiConditionSet::KomoriFuruya: return "komori-furuya";
  }
  return "?";
}

ConditionVerdict check_mlfi_set(MlfiConditionSet set, const MlfiIndexPoint& idx) {
  switch (set) {
    case MlfiConditionSet::Thm41: return check_mlfi(idx);
    case MlfiConditionSet::SteinWeiss: return check_stein_weiss(idx);
    case MlfiConditionSet::Grafakos: return check_grafakos(idx);
    case MlfiConditionSet::KomoriFuruya: return check_komori_furuya(idx);
  }
  throw InputError("unknown condition set");
}

IndexPoint mlfi_to_index_point(const MlfiIndexPoint& idx) {
  std::vector<ExponentEntry> entries = idx.entries();
  entries.push_back({Rational(0), idx.lam()});
  return IndexPoint(std::move(entries));
}

VectorFamily mlfi_vector_family(const MlfiIndexPoint& idx) {
  std::vector<Vec2> vs;
  vs.reserve(idx.arity() + 2);
  vs.push_back({Rational(1), Rational(0)});
  for (const auto& th : idx.theta()) vs.push_back({Rational(1), -th});
  vs.push_back({Rational(0), Rational(1)});
  return VectorFamily(std::move(vs), idx.k());
}

MlfiIndexPoint pinned_komori_furuya_only_point() {
  return MlfiIndexPoint({Rational(1), Rational(-1)}, Rational(1, 4),
                        {{Rational(7, 12), Rational(-1, 8)},
                         {Rational(7, 12), Rational(-1, 8)},
                         {Rational(7, 12), Rational(1, 4)}},
                        1);
}

MlfiIndexPoint pinned_thm41_only_point() {
  return MlfiIndexPoint({Rational(1), Rational(-1)}, Rational(1, 12),
                        {{Rational(1, 2), Rational(1, 12)},
                         {Rational(1, 2), Rational(1, 12)},
                         {Rational(1, 2), Rational(1, 4)}},
                        1);
}

namespace {

bool set_accepts_arity(MlfiConditionSet s, std::size_t arity) {
  switch (s) {
    case MlfiConditionSet::SteinWeiss: return arity == 1;
    case MlfiConditionSet::KomoriFuruya: return arity == 2;
    default: return true;
  }
}

std::vector<Rational> canonical_thetas(std::size_t arity) {
  // Distinct nonzero shifts; the condition systems do not depend on them.
  std::vector<Rational> th;
  for (std::size_t i = 0; i < arity; ++i) {
    long m = static_cast<long>(i / 2) + 1;
    th.push_back(Rational((i % 2 == 0) ? m : -m));
  }
  return th;
}

Rational random_rational(Rng& rng, std::int64_t den, std::int64_t num_lo, std::int64_t num_hi) {
  return Rational(rng.next_int(num_lo, num_hi), den);
}

}  // namespace

CompareReport compare_condition_sets(MlfiConditionSet a, MlfiConditionSet b,
                                     const CompareConfig& cfg) {
  if (cfg.budget == 0) throw InputError("compare: empty sample budget");
  if (!set_accepts_arity(a, cfg.arity) || !set_accepts_arity(b, cfg.arity))
    throw InputError("condition sets do not share arity N = " + std::to_string(cfg.arity));

  CompareReport report;
  report.set_a = a;
  report.set_b = b;

  auto classify_point = [&](const MlfiIndexPoint& p, bool pinned) {
    ComparePoint cp{p, check_mlfi_set(a, p).satisfied(), check_mlfi_set(b, p).satisfied(), pinned};
    ++report.sampled;
    if (cp.in_a && cp.in_b) {
      ++report.count_both;
      if (report.both.size() < cfg.list_cap) report.both.push_back(cp);
    } else if (cp.in_a) {
      ++report.count_only_a;
      if (report.only_a.size() < cfg.list_cap) report.only_a.push_back(cp);
    } else if (cp.in_b) {
      ++report.count_only_b;
      if (report.only_b.size() < cfg.list_cap) report.only_b.push_back(cp);
    } else {
      ++report.count_neither;
    }
  };

  if (cfg.arity == 2 && cfg.k == 1) {
    classify_point(pinned_komori_furuya_only_point(), true);
    classify_point(pinned_thm41_only_point(), true);
  }

  Rng rng(Rng::derive(cfg.seed, 0x434d5052));
  const std::int64_t d = cfg.denominator;
  std::size_t produced = 0;
  std::size_t attempts = 0;
  const std::size_t max_attempts = cfg.budget * 400;
  while (produced < cfg.budget && attempts < max_attempts) {
    ++attempts;
    // Sample lambda in (0,k), all slots j >= 1 freely, then solve slot 0's
    // weight from the scaling equality so differences are visible.
    Rational lam = Rational(rng.next_int(1, cfg.k * d - 1), d);
    std::vector<ExponentEntry> entries(cfg.arity + 1);
    for (std::size_t j = 1; j <= cfg.arity; ++j) {
      entries[j].inv_p = random_rational(rng, d, 0, d);
      entries[j].lam = random_rational(rng, d, -d, d);
    }
    entries[0].inv_p = random_rational(rng, d, 0, d);
    Rational rest = lam / cfg.k + entries[0].inv_p;
    for (std::size_t j = 1; j <= cfg.arity; ++j)
      rest += entries[j].inv_p + entries[j].lam / cfg.k;
    entries[0].lam = (Rational(2) - rest) * cfg.k;
    if (entries[0].lam < -2 || entries[0].lam > 2) continue;  // keep the box bounded
    MlfiIndexPoint p(canonical_thetas(cfg.arity), lam, std::move(entries), cfg.k);
    classify_point(p, false);
    ++produced;
  }
  return report;
}

}  // namespace blf
