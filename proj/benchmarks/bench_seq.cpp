#include <benchmark/benchmark.h>

#include "balnum/seq.hpp"

namespace {

void BM_Balancing(benchmark::State& state) {
  const balnum::SeqIndex n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::balancing(n));
  }
}
BENCHMARK(BM_Balancing)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_BalancingPairMod(benchmark::State& state) {
  const balnum::SeqIndex n = state.range(0);
  const balnum::BigNat m(1000000007);
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::balancing_pair_mod(n, m));
  }
}
BENCHMARK(BM_BalancingPairMod)->Arg(1 << 10)->Arg(1 << 20)->Arg(1 << 30);

void BM_CmpBounds(benchmark::State& state) {
  // Value far below the window: settled by the certified bound path.
  const balnum::BigNat x = balnum::balancing(400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::cmp_with_balancing(x, 1000));
  }
}
BENCHMARK(BM_CmpBounds);

void BM_CmpExact(benchmark::State& state) {
  // Value inside the window: forces the exact fallback.
  const balnum::BigNat x = balnum::balancing(1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::cmp_with_balancing(x, 1000));
  }
}
BENCHMARK(BM_CmpExact);

void BM_AlphaPower(benchmark::State& state) {
  const balnum::SeqIndex n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::alpha_power(n));
  }
}
BENCHMARK(BM_AlphaPower)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
