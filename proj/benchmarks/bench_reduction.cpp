#include "blforms/reduction.hpp"

#include <benchmark/benchmark.h>

using namespace blf;

namespace {

VectorFamily bench_family() {
  return VectorFamily({{Rational(1), Rational(0)},
                       {Rational(0), Rational(1)},
                       {Rational(1), Rational(1)},
                       {Rational(1), Rational(-1)},
                       {Rational(2), Rational(1)},
                       {Rational(1), Rational(2)}},
                      1);
}

std::vector<Rational> bench_lambda() {
  return {Rational(-7, 12), Rational(5, 6), Rational(1, 2),
          Rational(-1, 3),  Rational(2, 3), Rational(1, 4)};
}

void BM_Reduce(benchmark::State& state) {
  VectorFamily fam = bench_family();
  std::vector<Rational> lam = bench_lambda();
  for (auto _ : state) benchmark::DoNotOptimize(reduce(lam, fam).leaves.size());
}
BENCHMARK(BM_Reduce);

void BM_VerifyCertificate(benchmark::State& state) {
  VectorFamily fam = bench_family();
  ReductionCertificate cert = reduce(bench_lambda(), fam);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert).satisfied());
}
BENCHMARK(BM_VerifyCertificate);

void BM_VerifyPointwise(benchmark::State& state) {
  VectorFamily fam = bench_family();
  ReductionCertificate cert = reduce(bench_lambda(), fam);
  for (auto _ : state) benchmark::DoNotOptimize(verify_pointwise(cert, 1, 256).worst_slack);
}
BENCHMARK(BM_VerifyPointwise);

}  // namespace
