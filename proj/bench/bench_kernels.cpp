// Serial reference vs OpenMP kernels: signed permutation sums and principal minor sums.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>
#include <vector>

#include "mqinv/kernels.hpp"
#include "mqinv/matrix.hpp"
#include "mqinv/tableau.hpp"

using namespace mqinv;

namespace {

struct SumInput {
  std::vector<int> columns;
  std::vector<kernels::CellArrow> arrows;
  std::vector<ScalarMatrix> values;
};

SumInput sum_input(const Tableau& t) {
  std::mt19937_64 rng(1);
  SumInput in{t.columns, {}, {}};
  for (const auto& a : t.arrows) {
    in.arrows.push_back({a.tail.column - 1, a.tail.row - 1, a.head.column - 1, a.head.row - 1, a.label - 1});
  }
  for (int j = 1; j <= t.label_count(); ++j) {
    const auto [r, c] = t.label_shape(j);
    in.values.push_back(random_matrix(Field::rationals(), static_cast<std::size_t>(r), static_cast<std::size_t>(c), rng));
  }
  return in;
}

Tableau tableau_for(int which) {
  if (which == 0) return pfaffian_tableau(8);
  if (which == 1) return pfaffian_tableau(10);
  return det_tableau(6);
}

void BM_PermutationSumSerial(benchmark::State& state) {
  const SumInput in = sum_input(tableau_for(static_cast<int>(state.range(0))));
  const Scalar zero = Field::rationals().zero();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::signed_permutation_sum_serial(in.columns, in.arrows, in.values, zero));
  }
}

void BM_PermutationSumParallel(benchmark::State& state) {
  const SumInput in = sum_input(tableau_for(static_cast<int>(state.range(0))));
  const Scalar zero = Field::rationals().zero();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::signed_permutation_sum_parallel(in.columns, in.arrows, in.values, zero));
  }
  state.counters["threads"] = omp_get_max_threads();
}

ScalarMatrix minor_input(int n) {
  std::mt19937_64 rng(2);
  return random_matrix(Field::rationals(), static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
}

auto scalar_det = [](const ScalarMatrix& m) { return det(m); };

void BM_MinorSumSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScalarMatrix m = minor_input(n);
  const Scalar zero = Field::rationals().zero();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::principal_minor_sum_serial(m, n / 2, zero, scalar_det));
}

void BM_MinorSumParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScalarMatrix m = minor_input(n);
  const Scalar zero = Field::rationals().zero();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::principal_minor_sum_parallel(m, n / 2, zero, scalar_det));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

// 0: pfaffian tableau, 8 cells; 1: pfaffian tableau, 10 cells; 2: det tableau, columns (6,6)
BENCHMARK(BM_PermutationSumSerial)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermutationSumParallel)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MinorSumSerial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinorSumParallel)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
