#include <benchmark/benchmark.h>

#include "iwm/bockstein.hpp"

using namespace iwm;

static void BM_h2_cyclic(benchmark::State& state) {
  int n = (int)state.range(0);
  FiniteGroup G = FiniteGroup::cyclic(n);
  FpModule T(G, 3, 1);
  for (auto _ : state) {
    CohomologyContext ctx(T);
    benchmark::DoNotOptimize(ctx.h2_dim());
  }
}
BENCHMARK(BM_h2_cyclic)->Arg(9)->Arg(27)->Unit(benchmark::kMillisecond);

static void BM_bockstein_scan(benchmark::State& state) {
  FiniteGroup G = FiniteGroup::cyclic(9);
  FpModule T(G, 3, 1);
  std::vector<uint64_t> vals(9);
  for (int g = 0; g < 9; ++g) vals[g] = (uint64_t)g;
  CharacterChi chi(G, 3, 2, vals);
  for (auto _ : state) benchmark::DoNotOptimize(min_nonvanishing_psi(T, chi, 4));
}
BENCHMARK(BM_bockstein_scan)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
