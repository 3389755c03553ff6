#include <benchmark/benchmark.h>

#include "effpot/agmon.hpp"
#include "effpot/eigensolve.hpp"
#include "effpot/ensemble.hpp"
#include "effpot/landscape.hpp"
#include "effpot/wells.hpp"

namespace {

using namespace effpot;

void BM_Assemble1D(benchmark::State& state) {
  const Instance inst = gen_uniform_1d(1, static_cast<int>(state.range(0)), 4.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(inst.grid, inst.coeffs));
  state.SetItemsProcessed(state.iterations() * inst.grid.node_count());
}
BENCHMARK(BM_Assemble1D)->RangeMultiplier(4)->Range(256, 16384);

void BM_Assemble2D(benchmark::State& state) {
  const Instance inst = gen_bernoulli_2d(1, static_cast<int>(state.range(0)), 4.0, 0.3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(inst.grid, inst.coeffs));
  state.SetItemsProcessed(state.iterations() * inst.grid.node_count());
}
BENCHMARK(BM_Assemble2D)->Arg(20)->Arg(40)->Arg(80);

void BM_Landscape1D(benchmark::State& state) {
  const Instance inst = gen_uniform_1d(1, static_cast<int>(state.range(0)), 4.0, 4);
  const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(solve_landscape(op));
  state.SetItemsProcessed(state.iterations() * op.dof());
}
BENCHMARK(BM_Landscape1D)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_Landscape2D(benchmark::State& state) {
  const Instance inst = gen_bernoulli_2d(1, static_cast<int>(state.range(0)), 4.0, 0.3, 4);
  const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(solve_landscape(op));
  state.SetItemsProcessed(state.iterations() * op.dof());
}
BENCHMARK(BM_Landscape2D)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_Dijkstra(benchmark::State& state) {
  const Instance inst = gen_bernoulli_2d(1, static_cast<int>(state.range(0)), 4.0, 0.3, 4);
  const Landscape land = solve_landscape(assemble(inst.grid, inst.coeffs));
  const AgmonGraph graph(inst.grid, agmon_weight(land, land.W.minCoeff(), inst.coeffs));
  const IndexSet sources = sublevel_set(land, land.W.minCoeff() + 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_set(graph, sources));
  state.SetItemsProcessed(state.iterations() * inst.grid.node_count());
}
BENCHMARK(BM_Dijkstra)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_EigSmallest1D(benchmark::State& state) {
  const Instance inst = gen_uniform_1d(1, static_cast<int>(state.range(0)), 4.0, 4);
  const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(eig_smallest(op, 10));
}
BENCHMARK(BM_EigSmallest1D)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void BM_EigDense(benchmark::State& state) {
  const Instance inst = gen_uniform_1d(1, static_cast<int>(state.range(0)), 4.0, 4);
  const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(dense_eigensolve(op));
}
BENCHMARK(BM_EigDense)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Realization(benchmark::State& state) {
  RealizationConfig cfg;
  cfg.T = static_cast<int>(state.range(0));
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(run_realization(cfg));
  }
}
BENCHMARK(BM_Realization)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
