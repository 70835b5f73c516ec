#include <benchmark/benchmark.h>

#include "iwm/quad.hpp"

using namespace iwm;

static void BM_reduced_forms_sweep(benchmark::State& state) {
  for (auto _ : state) {
    std::size_t total = 0;
    for (long d = -5; d > -500; --d)
      if (is_fundamental_discriminant(d)) total += reduced_forms(d).size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_reduced_forms_sweep)->Unit(benchmark::kMillisecond);

static void BM_gold_test(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gold_test(-11, 3, 8));
}
BENCHMARK(BM_gold_test);

static void BM_dirichlet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(class_number_dirichlet(-499));
}
BENCHMARK(BM_dirichlet);

BENCHMARK_MAIN();
