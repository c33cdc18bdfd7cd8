#include <benchmark/benchmark.h>

#include "balnum/divisibility.hpp"
#include "balnum/factor.hpp"
#include "balnum/primality.hpp"
#include "balnum/seq.hpp"

namespace {

void BM_FactorBalancing(benchmark::State& state) {
  const balnum::BigNat b = balnum::balancing(state.range(0));
  const balnum::FactorBudget budget;
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::factorize(b, budget));
  }
}
BENCHMARK(BM_FactorBalancing)->Arg(20)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_RankOfApparition(benchmark::State& state) {
  const balnum::BigNat p(1153);
  const balnum::FactorBudget budget;
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::rank_of_apparition(p, budget));
  }
}
BENCHMARK(BM_RankOfApparition);

void BM_IsPrime(benchmark::State& state) {
  const balnum::BigNat q("1583407981");
  for (auto _ : state) {
    benchmark::DoNotOptimize(balnum::is_prime(q));
  }
}
BENCHMARK(BM_IsPrime);

void BM_EulerPhiViaFactor(benchmark::State& state) {
  const balnum::BigNat n(6930);
  const balnum::FactorBudget budget;
  for (auto _ : state) {
    auto f = balnum::factorize(n, budget);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_EulerPhiViaFactor);

}  // namespace
