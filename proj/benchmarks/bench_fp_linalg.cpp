#include <benchmark/benchmark.h>

#include <random>

#include "iwm/fp_linalg.hpp"

using namespace iwm;

static FpMatrix random_matrix(uint64_t p, std::size_t r, std::size_t c, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<uint64_t> d(0, p - 1);
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

static void BM_rank_square(benchmark::State& state) {
  std::size_t n = (std::size_t)state.range(0);
  FpMatrix m = random_matrix(3, n, n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_rank_square)->Arg(64)->Arg(256);

// the d1-solver shape: |G|^2 dim rows by |G| dim columns at the budget cap
static void BM_tall_column_solve(benchmark::State& state) {
  std::size_t cols = 243;
  std::size_t rows = cols * cols / 4;
  FpMatrix m = random_matrix(3, rows, cols, 7);
  FpVector x(cols, 1);
  FpVector b = m.apply(x);
  for (auto _ : state) {
    ColumnSpaceSolver cs(3, rows);
    FpVector col(rows);
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < rows; ++i) col[i] = m.at(i, j);
      cs.add_column(col);
    }
    benchmark::DoNotOptimize(cs.solve(b));
  }
}
BENCHMARK(BM_tall_column_solve)->Unit(benchmark::kMillisecond);

static void BM_streaming_echelon(benchmark::State& state) {
  std::size_t cols = (std::size_t)state.range(0);
  FpMatrix m = random_matrix(5, 4 * cols, cols, 3);
  for (auto _ : state) {
    RowEchelon ech(5, cols);
    for (std::size_t i = 0; i < m.rows(); ++i)
      ech.add_row(FpVector(m.row(i), m.row(i) + m.cols()));
    benchmark::DoNotOptimize(ech.rank());
  }
}
BENCHMARK(BM_streaming_echelon)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
