#include <benchmark/benchmark.h>

#include "chanlin/fastpath.hpp"
#include "chanlin/frontier.hpp"
#include "chanlin/generators.hpp"
#include "chanlin/saturation.hpp"
#include "chanlin/smt.hpp"

namespace {

chanlin::Instance random_instance(int events, int threads, std::uint64_t seed) {
  chanlin::RandomParams p;
  p.events = events;
  p.threads = threads;
  p.channels = 3;
  p.seed = seed;
  return chanlin::random_positive(p).instance;
}

void bm_frontier_rf(benchmark::State& state) {
  auto inst = random_instance(static_cast<int>(state.range(0)), 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::solve_vchrf(inst));
}
BENCHMARK(bm_frontier_rf)->Arg(20)->Arg(40)->Arg(80);

void bm_frontier_rf_saturated(benchmark::State& state) {
  auto inst = random_instance(static_cast<int>(state.range(0)), 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::solve_vchrf_saturated(inst));
}
BENCHMARK(bm_frontier_rf_saturated)->Arg(20)->Arg(40)->Arg(80);

void bm_frontier_values(benchmark::State& state) {
  auto inst = chanlin::without_rf(random_instance(static_cast<int>(state.range(0)), 3, 7));
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::solve_vch(inst));
}
BENCHMARK(bm_frontier_values)->Arg(12)->Arg(20)->Arg(28);

void bm_saturate(benchmark::State& state) {
  auto inst = random_instance(static_cast<int>(state.range(0)), 4, 11);
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::saturate(inst));
}
BENCHMARK(bm_saturate)->Arg(100)->Arg(1000);

void bm_pipeline_saturated(benchmark::State& state) {
  auto inst = chanlin::sync_pipeline(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::solve_vchrf_saturated(inst));
}
BENCHMARK(bm_pipeline_saturated)->Arg(1000)->Arg(10000);

void bm_sync(benchmark::State& state) {
  auto inst = chanlin::sync_pipeline(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::solve_sync(inst));
}
BENCHMARK(bm_sync)->Arg(1000)->Arg(100000);

void bm_acyclic(benchmark::State& state) {
  chanlin::RandomParams p;
  p.events = static_cast<int>(state.range(0));
  p.threads = 2;
  p.channels = 2;
  p.cap_menu = {0, 1, chanlin::kInf};
  p.seed = 3;
  auto inst = chanlin::random_positive(p).instance;
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::solve_acyclic(inst));
}
BENCHMARK(bm_acyclic)->Arg(50)->Arg(200);

void bm_emit_smt(benchmark::State& state) {
  auto inst = random_instance(static_cast<int>(state.range(0)), 3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(chanlin::emit_smtlib(inst, false));
}
BENCHMARK(bm_emit_smt)->Arg(20)->Arg(60);

}  // namespace
BENCHMARK_MAIN();
