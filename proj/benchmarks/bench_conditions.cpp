#include "blforms/conditions.hpp"

#include <benchmark/benchmark.h>

using namespace blf;

namespace {

IndexPoint six_slot_point() {
  std::vector<ExponentEntry> entries;
  for (int j = 0; j < 6; ++j)
    entries.push_back({Rational(1, 3), Rational(j % 2 == 0 ? -1 : 1, 18)});
  return IndexPoint(std::move(entries));
}

VectorFamily six_slot_family() {
  return VectorFamily({{Rational(1), Rational(0)},
                       {Rational(0), Rational(1)},
                       {Rational(1), Rational(1)},
                       {Rational(1), Rational(-1)},
                       {Rational(2), Rational(1)},
                       {Rational(1), Rational(2)}},
                      1);
}

void BM_CheckSufficient(benchmark::State& state) {
  IndexPoint idx = six_slot_point();
  VectorFamily fam = six_slot_family();
  for (auto _ : state) benchmark::DoNotOptimize(check_sufficient(idx, fam).satisfied());
}
BENCHMARK(BM_CheckSufficient);

void BM_Classify(benchmark::State& state) {
  IndexPoint idx = six_slot_point();
  VectorFamily fam = six_slot_family();
  for (auto _ : state) benchmark::DoNotOptimize(classify(idx, fam));
}
BENCHMARK(BM_Classify);

void BM_CheckMlfi(benchmark::State& state) {
  MlfiIndexPoint p = pinned_thm41_only_point();
  for (auto _ : state) benchmark::DoNotOptimize(check_mlfi(p).satisfied());
}
BENCHMARK(BM_CheckMlfi);

}  // namespace
