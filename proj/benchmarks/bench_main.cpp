#include <benchmark/benchmark.h>

#include "cylqft/kernels.hpp"
#include "cylqft/mode_algebra.hpp"

using namespace cylqft;

static void BM_StarProductB(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto vac = ContractionKernel::cylinder_vacuum();
  const auto b2 = build_B(2, K);
  const auto bm2 = build_B(-2, K);
  for (auto _ : state) benchmark::DoNotOptimize(star_product(b2, bm2, vac));
}
BENCHMARK(BM_StarProductB)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_VirasoroCommutator(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(virasoro_commutator(3, -3, K));
}
BENCHMARK(BM_VirasoroCommutator)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_DiagDifference(benchmark::State& state) {
  double s = 1e-5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(diag_difference(s));
    s = s < 6.0 ? s * 1.01 : 1e-5;
  }
}
BENCHMARK(BM_DiagDifference);

static void BM_ModeSum(benchmark::State& state) {
  const auto N = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(eval_dW_cyl(1.0, 0.0, 1e-3, N));
  state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_ModeSum)->Arg(1000)->Arg(100000);
BENCHMARK_MAIN();
