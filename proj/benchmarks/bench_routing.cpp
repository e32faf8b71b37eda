// Microbenchmarks for the hot paths: topology discovery, the exact LP
// baseline, and a full single-interval evaluation on the reference network.

#include <benchmark/benchmark.h>

#include <vector>

#include "mtroute/experiment.hpp"
#include "mtroute/optimal.hpp"
#include "mtroute/scenario.hpp"
#include "mtroute/topology.hpp"

using namespace mtroute;

namespace {

const ScenarioConfig& cfg() {
  static const ScenarioConfig c = default_scenario();
  return c;
}

const Network& net() {
  static const Network n = build_reference_network(cfg());
  return n;
}

std::vector<AlgorithmSpec> all_specs() {
  std::vector<AlgorithmSpec> specs;
  for (const char* token :
       {"DMetric", "InvCap", "MDelay-40", "MDelay-60", "Optimal"})
    specs.push_back(*parse_algorithm(token));
  return specs;
}

void BM_discover_topologies(benchmark::State& state) {
  const int source = *net().node_index("pgw");
  const int horizon = scenario_horizon_ms(cfg());
  for (auto _ : state) {
    benchmark::DoNotOptimize(discover_topologies(net(), horizon, source));
  }
}
BENCHMARK(BM_discover_topologies);

void BM_scenario_catalog(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(scenario_catalog(net(), cfg()));
  }
}
BENCHMARK(BM_scenario_catalog);

void BM_solve_optimal_interval(benchmark::State& state) {
  const auto interval = static_cast<int>(state.range(0));
  const auto demands = merge_classes(
      net(), interval_demands(net(), cfg(), interval, cfg().realtime_share));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_optimal(net(), demands));
  }
}
BENCHMARK(BM_solve_optimal_interval)->Arg(16)->Arg(42);

void BM_evaluate_interval(benchmark::State& state) {
  const auto specs = all_specs();
  const TopologyCatalog catalog = scenario_catalog(net(), cfg());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evaluate_interval(net(), cfg(), 42, specs, catalog));
  }
}
BENCHMARK(BM_evaluate_interval);

}  // namespace

BENCHMARK_MAIN();
