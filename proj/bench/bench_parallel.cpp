#include <benchmark/benchmark.h>

#include <random>

#include "qmsr/engine.hpp"
#include "qmsr/graph.hpp"

namespace {

qmsr::DirectedGraph random_graph(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<qmsr::Edge> edges;
  for (qmsr::Node j = 1; j <= n; ++j)
    for (qmsr::Node i = 1; i <= n; ++i)
      if (i != j && coin(rng)) edges.push_back({j, i});
  return qmsr::DirectedGraph(n, std::move(edges));
}

// Dense random graphs usually pass (2,2), so both kernels scan every pair.
void BM_RobustnessSerial(benchmark::State& state) {
  const auto g = random_graph(static_cast<int>(state.range(0)), 0.7, 7);
  for (auto _ : state) benchmark::DoNotOptimize(qmsr::is_r_s_robust_serial(g, 2, 2));
}

void BM_RobustnessParallel(benchmark::State& state) {
  const auto g = random_graph(static_cast<int>(state.range(0)), 0.7, 7);
  for (auto _ : state) benchmark::DoNotOptimize(qmsr::is_r_s_robust(g, 2, 2));
}

qmsr::Scenario sync_scenario() {
  qmsr::Scenario s;
  s.graph = qmsr::DirectedGraph::complete(7);
  s.placement = {{1}, 1, qmsr::FaultMode::kTotal};
  s.strategy = qmsr::AdversaryStrategy::alternating(1, 10);
  s.schedule = qmsr::Schedule::probabilistic(0.5);
  s.x0 = {1, 10, 1, 10, 1, 10, 1};
  s.horizon = 500;
  return s;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto s = sync_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(qmsr::monte_carlo_serial(s, static_cast<int>(state.range(0))));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto s = sync_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(qmsr::monte_carlo(s, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_RobustnessSerial)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RobustnessParallel)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
