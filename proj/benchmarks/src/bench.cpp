#include <benchmark/benchmark.h>

#include "timm/generators.hpp"
#include "timm/kd_immersion.hpp"
#include "timm/oracle.hpp"
#include "timm/ordering.hpp"
#include "timm/tt_immersion.hpp"

namespace {

using namespace timm;

void BM_DegreeOrdering(benchmark::State& state) {
  const auto t = random_tournament(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(degree_ordering(t));
}
BENCHMARK(BM_DegreeOrdering)->Arg(64)->Arg(256)->Arg(1024);

void BM_LowBackwardOrdering(benchmark::State& state) {
  const auto t = random_tournament(static_cast<int>(state.range(0)), 12);
  for (auto _ : state) benchmark::DoNotOptimize(low_backward_ordering(t));
}
BENCHMARK(BM_LowBackwardOrdering)->Arg(32)->Arg(128);

void BM_FilterGood(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = random_tournament(n, 13);
  const auto view = degree_ordering(t);
  const auto sample = VertexSet::all(n);
  for (auto _ : state) benchmark::DoNotOptimize(filter_good(view, sample));
}
BENCHMARK(BM_FilterGood)->Arg(128)->Arg(512);

void BM_FindTt(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto t = random_tournament(30 * k, 14);
  for (auto _ : state) benchmark::DoNotOptimize(find_tt_immersion(t, k));
}
BENCHMARK(BM_FindTt)->Arg(3)->Arg(6)->Arg(8);

void BM_FindKd(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto t = near_regular_tournament(2 * 59 * k + 1, 15);
  for (auto _ : state) benchmark::DoNotOptimize(find_kd_immersion(t, k));
}
BENCHMARK(BM_FindKd)->Arg(2)->Arg(3);

void BM_OracleBlowup(benchmark::State& state) {
  const auto t = triangle_blowup(4, 4, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle_find_immersion(t, PatternKind::complete_digraph, 4,
                              static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_OracleBlowup)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
