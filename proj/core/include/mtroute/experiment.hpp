#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtroute/baselines.hpp"
#include "mtroute/metrics.hpp"
#include "mtroute/optimal.hpp"
#include "mtroute/scenario.hpp"

namespace mtroute {

enum class AlgorithmKind { dmetric, invcap, mdelay, optimal };

// Parsed algorithm token: "DMetric", "InvCap", "MDelay-<n>" with n in 1..99
// (the realtime share percentage), or "Optimal".
struct AlgorithmSpec {
  std::string token;
  AlgorithmKind kind = AlgorithmKind::dmetric;
  double realtime_share = 0.0;  // meaningful for the delay-hybrid kind
};

std::optional<AlgorithmSpec> parse_algorithm(const std::string& token);

// One routed unit for score-keeping: a demand (or aggregated commodity)
// with the links its traffic crosses and the user count sharing them.
struct RoutedEntry {
  TrafficDemand demand;
  std::vector<int> links;
  int n_flows = 1;
};

struct AlgorithmEvaluation {
  AlgorithmSpec spec;
  LinkLoadMap loads;
  int rejections = 0;
  std::vector<RoutedEntry> entries;
  std::vector<SelectionTraceRow> trace;   // delay-hybrid algorithms only
  std::optional<OptimalSolution> optimal; // exact baseline only
  std::vector<std::string> errors;
};

// Runs every requested algorithm on one interval's demands. The catalog is
// the per-source topology discovery shared across intervals (only volumes
// change between intervals, never the candidate paths).
std::vector<AlgorithmEvaluation> evaluate_interval(
    const Network& net, const ScenarioConfig& cfg, int interval,
    std::span<const AlgorithmSpec> specs, const TopologyCatalog& catalog);

// Discovery horizon for the scenario's topology sets: one layer above the
// loosest delay bound so every admissible path fits strictly below it.
int scenario_horizon_ms(const ScenarioConfig& cfg);

TopologyCatalog scenario_catalog(const Network& net, const ScenarioConfig& cfg);

// Turns one algorithm's evaluation into a report row; `optimal_mrc` is the
// exact baseline's score on the same interval when known.
IntervalReport make_report(const Network& net, int interval,
                           const AlgorithmEvaluation& eval,
                           std::optional<double> optimal_mrc);

struct RunOptions {
  std::vector<AlgorithmSpec> algorithms;
  std::string out_dir;
  unsigned seed = 0;  // reserved for randomized tie-shuffling; off by default
  int workers = 0;    // 0 = hardware concurrency
};

struct RunResult {
  std::vector<IntervalReport> reports;  // interval-major, algorithms in order
  std::vector<std::string> files;       // artifact paths written
  std::vector<std::string> errors;
  int busy_interval = 0;
};

// Full sweep over the scenario's interval range on a small worker pool,
// merged in interval order regardless of completion order. Writes
// report.csv, demands.csv, perf_ratio_sorted.dat, mos_vs_flows.dat,
// summary.json and scenario_echo.json into out_dir. Deterministic: identical
// inputs produce byte-identical artifacts.
RunResult run_experiment(const Network& net, const ScenarioConfig& cfg,
                         const RunOptions& opts);

// Single-interval artifacts for the route subcommand: a report.csv slice,
// the interval's demand matrix and one selection trace per delay-hybrid
// algorithm, all written into out_dir.
RunResult route_interval(const Network& net, const ScenarioConfig& cfg,
                         int interval, const RunOptions& opts);

}  // namespace mtroute
