#include "blforms/conditions.hpp"

#include "blforms/rng.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace blf;
using namespace blf::testing;

namespace {

IndexPoint point3(std::initializer_list<std::pair<Rational, Rational>> slots) {
  std::vector<ExponentEntry> entries;
  for (const auto& [p, l] : slots) entries.push_back({p, l});
  return IndexPoint(std::move(entries));
}

}  // namespace

TEST_CASE("sufficiency on the printed examples") {
  VectorFamily fam = standard_family();

  ConditionVerdict good = check_sufficient(uniform_point(3, {1, 2}, {1, 6}), fam);
  CHECK(good.satisfied());
  CHECK(good.slack("hyper_strict", std::size_t{0}) == Rational(1, 3));
  CHECK(good.slack("index", std::size_t{0}) == Rational(1, 3));
  CHECK(good.slack("interpolation") == Rational(1, 2));

  ConditionVerdict endpoint =
      check_sufficient(point3({{Rational(1), Rational(0)},
                               {Rational(1), Rational(0)},
                               {Rational(0), Rational(0)}}),
                       fam);
  CHECK_FALSE(endpoint.satisfied());
  // Violates the open range and the strict complement sum at ell = 0
  // (slack exactly 0, not strict).
  CHECK(endpoint.slack("hyper_strict", std::size_t{0}) == 0);
  bool open_range_violated = false;
  for (const auto& c : endpoint.violations())
    if (c.condition == "p_open_hi" || c.condition == "p_open_lo") open_range_violated = true;
  CHECK(open_range_violated);

  ConditionVerdict negative =
      check_sufficient(point3({{Rational(1, 2), Rational(-1, 4)},
                               {Rational(1, 2), Rational(-1, 4)},
                               {Rational(1, 2), Rational(1)}}),
                       fam);
  CHECK_FALSE(negative.satisfied());
  CHECK(negative.slack("index", std::size_t{2}) == Rational(-1, 2));
}

TEST_CASE("necessity on the printed examples") {
  VectorFamily fam = standard_family();

  ConditionVerdict endpoint =
      check_necessary(point3({{Rational(1), Rational(0)},
                              {Rational(1), Rational(0)},
                              {Rational(0), Rational(0)}}),
                      fam);
  CHECK(endpoint.satisfied());
  CHECK(endpoint.slack("hyper", std::size_t{0}) == 0);  // equality is allowed here

  ConditionVerdict scaling_off = check_necessary(uniform_point(3, {1, 2}, {1, 2}), fam);
  CHECK_FALSE(scaling_off.satisfied());
  CHECK(scaling_off.slack("scaling") == Rational(1));  // sum = 3, not 2
}

TEST_CASE("classification of the three regimes") {
  VectorFamily fam = standard_family();
  CHECK(classify(uniform_point(3, {1, 2}, {1, 6}), fam) == Classification::Sufficient);
  CHECK(classify(point3({{Rational(1), Rational(0)},
                         {Rational(1), Rational(0)},
                         {Rational(0), Rational(0)}}),
                 fam) == Classification::Boundary);
  CHECK(classify(uniform_point(3, {1, 2}, {1, 2}), fam) == Classification::NecessaryFail);
}

TEST_CASE("dimension mismatch is rejected") {
  VectorFamily fam = standard_family();
  CHECK_THROWS_AS(check_sufficient(uniform_point(4, {1, 2}, {1, 6}), fam), InputError);
  CHECK_THROWS_AS(check_necessary(uniform_point(2, {1, 2}, {0, 1}), fam), InputError);
}

TEST_CASE("subspace condition on the printed examples") {
  VectorFamily fam = standard_family();

  ConditionVerdict uniform = check_subspace_condition(
      {Rational(2, 3), Rational(2, 3), Rational(2, 3)}, fam);
  CHECK(uniform.satisfied());
  CHECK(uniform.slack("subspace_full") == 0);             // 2 = 2
  CHECK(uniform.slack("subspace_generic") == Rational(1));
  CHECK(uniform.slack("subspace", std::size_t{0}) == Rational(1, 3));  // 4/3 >= 1

  // (1, 1, 0): equality where the complement sum drops a full slot.
  ConditionVerdict corner = check_subspace_condition({Rational(1), Rational(1), Rational(0)}, fam);
  CHECK(corner.satisfied());
  CHECK(corner.slack("subspace", std::size_t{0}) == 0);
  CHECK(corner.slack("subspace", std::size_t{1}) == 0);
  CHECK(corner.slack("subspace", std::size_t{2}) == Rational(1));

  // Degenerate bilinear case: the two lines each give exactly 1 >= 1.
  VectorFamily fam2({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, 1);
  ConditionVerdict bilinear = check_subspace_condition({Rational(1), Rational(1)}, fam2);
  CHECK(bilinear.satisfied());
  CHECK(bilinear.slack("subspace", std::size_t{0}) == 0);
  CHECK(bilinear.slack("subspace", std::size_t{1}) == 0);
}

TEST_CASE("subspace condition equals scaling + hyper on the denominator-12 grid") {
  // With all weights zero and the scaling equality, the subspace system and
  // the necessity inequalities must agree exactly, slack by slack.
  VectorFamily fam = standard_family();
  std::vector<Rational> grid;
  for (long den = 1; den <= 12; ++den)
    for (long num = 0; num <= den; ++num) grid.push_back(Rational(num, den));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::size_t tested = 0;
  for (const auto& a : grid) {
    for (const auto& b : grid) {
      Rational c = Rational(2) - a - b;
      if (c < 0 || c > 1) continue;
      std::vector<Rational> inv_ps{a, b, c};
      IndexPoint idx({{a, Rational(0)}, {b, Rational(0)}, {c, Rational(0)}});
      ConditionVerdict sub = check_subspace_condition(inv_ps, fam);
      ConditionVerdict nec = check_necessary(idx, fam);
      REQUIRE(nec.slack("scaling") == 0);
      CHECK(sub.satisfied() == nec.satisfied());
      for (std::size_t ell = 0; ell < 3; ++ell)
        CHECK(sub.slack("subspace", ell) == nec.slack("hyper", ell));
      ++tested;
    }
  }
  CHECK(tested > 500);  // exhaustive over the grid slice
}

TEST_CASE("segment midpoint arithmetic") {
  VectorFamily fam = standard_family();
  IndexPoint a = uniform_point(3, {1, 2}, {1, 6});
  IndexPoint b = uniform_point(3, {1, 3}, {1, 3});

  IndexPoint at0 = segment_midpoint(a, b, Rational(0));
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(at0.entry(j).inv_p == a.entry(j).inv_p);
    CHECK(at0.entry(j).lam == a.entry(j).lam);
  }
  IndexPoint mid = segment_midpoint(a, b, Rational(1, 2));
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(mid.entry(j).inv_p == Rational(5, 12));
    CHECK(mid.entry(j).lam == Rational(1, 4));
  }
  CHECK_THROWS_AS(segment_midpoint(a, b, Rational(3, 2)), InputError);
}

TEST_CASE("sufficiency implies necessity on seeded random points") {
  VectorFamily fam = standard_family();
  Rng rng(2024);
  std::size_t sufficient_seen = 0;
  for (int i = 0; i < 2000; ++i) {
    IndexPoint idx = (i % 2 == 0) ? random_box_point(rng, 3) : random_sufficient_point(rng, 3, 1);
    if (check_sufficient(idx, fam).satisfied()) {
      ++sufficient_seen;
      CHECK(check_necessary(idx, fam).satisfied());
    }
  }
  CHECK(sufficient_seen >= 1000);
}

TEST_CASE("convexity: midpoints of sufficient points stay sufficient") {
  VectorFamily fam = standard_family();
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    IndexPoint a = random_sufficient_point(rng, 3, 1);
    IndexPoint b = random_sufficient_point(rng, 3, 1);
    Rational t(rng.next_int(0, 16), 16);
    IndexPoint mid = segment_midpoint(a, b, t);
    CHECK(classify(mid, fam) == Classification::Sufficient);
  }
}

TEST_CASE("mlfi conditions on the printed examples") {
  // Equality in the strict kernel-index inequality at ell = 2.
  MlfiIndexPoint kf_only = pinned_komori_furuya_only_point();
  ConditionVerdict thm41 = check_mlfi(kf_only);
  CHECK_FALSE(thm41.satisfied());
  CHECK(thm41.slack("another_strict", std::size_t{2}) == 0);
  CHECK(check_komori_furuya(kf_only).satisfied());

  MlfiIndexPoint thm41_only = pinned_thm41_only_point();
  CHECK(check_mlfi(thm41_only).satisfied());
  ConditionVerdict kf = check_komori_furuya(thm41_only);
  CHECK_FALSE(kf.satisfied());
  CHECK(kf.slack("kf_lambda_le", std::size_t{2}) == Rational(1, 12) - Rational(1, 4));

  // N = 1 instance, checked slot by slot against the displayed conditions.
  MlfiIndexPoint linear({Rational(1)}, Rational(1, 2),
                        {{Rational(1, 2), Rational(1, 4)}, {Rational(1, 2), Rational(1, 4)}}, 1);
  CHECK(check_mlfi(linear).satisfied());
  CHECK(check_stein_weiss(linear).satisfied());
}

TEST_CASE("mlfi malformed inputs") {
  CHECK_THROWS_AS(MlfiIndexPoint({Rational(1), Rational(1)}, Rational(1, 2),
                                 {{Rational(1, 2), Rational(0)},
                                  {Rational(1, 2), Rational(0)},
                                  {Rational(1, 2), Rational(0)}},
                                 1),
                  InputError);  // duplicate thetas
  CHECK_THROWS_AS(MlfiIndexPoint({Rational(1)}, Rational(2),
                                 {{Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(0)}},
                                 1),
                  InputError);  // lambda outside (0, k)
  MlfiIndexPoint n1({Rational(1)}, Rational(1, 2),
                    {{Rational(1, 2), Rational(1, 4)}, {Rational(1, 2), Rational(1, 4)}}, 1);
  CHECK_THROWS_AS(check_komori_furuya(n1), InputError);  // arity
}

TEST_CASE("grafakos covers unweighted points and rejects weighted ones") {
  MlfiIndexPoint unweighted({Rational(1), Rational(-1)}, Rational(1, 2),
                            {{Rational(1, 2), Rational(0)},
                             {Rational(1, 2), Rational(0)},
                             {Rational(1, 2), Rational(0)}},
                            1);
  CHECK(check_grafakos(unweighted).satisfied());
  CHECK(check_mlfi(unweighted).satisfied());  // covered by the general theorem

  MlfiIndexPoint weighted = pinned_thm41_only_point();
  CHECK_FALSE(check_grafakos(weighted).satisfied());
}

TEST_CASE("scaling slack of an mlfi point matches its (N+2)-linear form point") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    long den = 12;
    Rational lam(rng.next_int(1, den - 1), den);
    std::vector<ExponentEntry> entries(3);
    for (auto& e : entries)
      e = {Rational(rng.next_int(0, den), den), Rational(rng.next_int(-den, den), den)};
    MlfiIndexPoint p({Rational(1), Rational(-1)}, lam, entries, 1);
    IndexPoint form_point = mlfi_to_index_point(p);
    VectorFamily fam = mlfi_vector_family(p);
    CHECK(form_point.size() == 4);
    Rational mlfi_scale = check_mlfi(p).slack("mlfi_scaling");
    CHECK(mlfi_scale == scaling_slack(form_point, fam.k()));
  }
}

TEST_CASE("compare condition sets") {
  CompareConfig cfg;
  cfg.budget = 400;
  CompareReport report = compare_condition_sets(MlfiConditionSet::Thm41,
                                                MlfiConditionSet::KomoriFuruya, cfg);
  // The two pinned probes land in opposite difference buckets.
  bool pinned_in_b = false, pinned_in_a = false;
  for (const auto& p : report.only_b)
    if (p.pinned) pinned_in_b = true;
  for (const auto& p : report.only_a)
    if (p.pinned) pinned_in_a = true;
  CHECK(pinned_in_b);
  CHECK(pinned_in_a);

  CompareReport self = compare_condition_sets(MlfiConditionSet::Thm41, MlfiConditionSet::Thm41,
                                              cfg);
  CHECK(self.count_only_a == 0);
  CHECK(self.count_only_b == 0);

  CompareConfig empty;
  empty.budget = 0;
  CHECK_THROWS_AS(
      compare_condition_sets(MlfiConditionSet::Thm41, MlfiConditionSet::Thm41, empty),
      InputError);
  CompareConfig bad_arity;
  bad_arity.arity = 3;
  CHECK_THROWS_AS(compare_condition_sets(MlfiConditionSet::Thm41,
                                         MlfiConditionSet::KomoriFuruya, bad_arity),
                  InputError);
}

TEST_CASE("verdicts are bit-for-bit reproducible") {
  VectorFamily fam = standard_family();
  IndexPoint idx = uniform_point(3, {1, 2}, {1, 6});
  ConditionVerdict a = check_sufficient(idx, fam);
  ConditionVerdict b = check_sufficient(idx, fam);
  REQUIRE(a.checks().size() == b.checks().size());
  for (std::size_t i = 0; i < a.checks().size(); ++i) {
    CHECK(a.checks()[i].condition == b.checks()[i].condition);
    CHECK(a.checks()[i].slack == b.checks()[i].slack);
  }
}
