#include "stackyfan/fan.hpp"
#include "stackyfan/lattice.hpp"
#include "stackyfan/symmetric_refinement.hpp"
#include "stackyfan/tower.hpp"
#include "stackyfan/triangulation.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace stackyfan;

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-50, 50);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(6)->Arg(10);

static void BM_Enumerate(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_unimodular(2, n));
}
BENCHMARK(BM_Enumerate)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Validate(benchmark::State& state) {
  const auto t = grid_subdivision(trivial_triangulation(2), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(validate(t));
}
BENCHMARK(BM_Validate)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SymmetricRefinement(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_unimodular_refinement(2, 2));
}
BENCHMARK(BM_SymmetricRefinement)->Unit(benchmark::kMillisecond);

static void BM_SmoothCrepant(benchmark::State& state) {
  const auto t = grid_subdivision(trivial_triangulation(2), state.range(0));
  const auto f = cone_over_triangulation(t);
  const auto base = orthant_fan(2, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_smooth(f));
    benchmark::DoNotOptimize(is_crepant(f, base));
  }
}
BENCHMARK(BM_SmoothCrepant)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Tower(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_tower(2, 3));
}
BENCHMARK(BM_Tower)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
