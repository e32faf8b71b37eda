// Command-line front end: validate configs, dump discovered topology sets,
// route a single interval, or run the full interval sweep.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtroute/experiment.hpp"
#include "mtroute/json_io.hpp"

namespace {

using namespace mtroute;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::string algorithms = "DMetric,InvCap,MDelay-40,MDelay-60,Optimal";
  std::string profile_path;
  double realtime_share = -1.0;  // <0 = keep config value
  int d_realtime_ms = 0;         // 0 = keep config value
  int d_nonrealtime_ms = 0;
};

void add_common_flags(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path,
                  "experiment config JSON (defaults to the built-in scenario)")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", args.out_dir, "output directory");
  sub->add_option("--algorithms", args.algorithms,
                  "comma-separated list: DMetric,InvCap,MDelay-<n>,Optimal");
  sub->add_option("--realtime-share", args.realtime_share,
                  "override the scenario realtime share (0..1)");
  sub->add_option("--d-realtime-ms", args.d_realtime_ms,
                  "override the realtime delay bound");
  sub->add_option("--d-nonrealtime-ms", args.d_nonrealtime_ms,
                  "override the non-realtime delay bound");
  sub->add_option("--profile", args.profile_path,
                  "file with 48 whitespace-separated profile weights")
      ->check(CLI::ExistingFile);
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct LoadedConfig {
  Network net;
  ScenarioConfig scenario;
};

// Parses config + overrides; on any issue prints one "location: message"
// line per problem and returns nullopt.
std::optional<LoadedConfig> load_config(const CommonArgs& args) {
  ValidationReport report;
  ScenarioConfig scenario = default_scenario();
  std::optional<Network> embedded;

  if (!args.config_path.empty()) {
    const auto text = read_file(args.config_path);
    if (!text) {
      std::cerr << args.config_path << ": cannot read file\n";
      return std::nullopt;
    }
    ConfigParse parsed = parse_config_json(*text);
    report = std::move(parsed.report);
    scenario = std::move(parsed.scenario);
    embedded = std::move(parsed.network);
  }

  if (args.realtime_share >= 0.0) {
    if (args.realtime_share > 1.0)
      report.add("--realtime-share", "must lie in [0,1]");
    else
      scenario.realtime_share = args.realtime_share;
  }
  if (args.d_realtime_ms != 0) {
    if (args.d_realtime_ms < 1)
      report.add("--d-realtime-ms", "must be a positive integer");
    else
      scenario.d_realtime_ms = args.d_realtime_ms;
  }
  if (args.d_nonrealtime_ms != 0) {
    if (args.d_nonrealtime_ms < 1)
      report.add("--d-nonrealtime-ms", "must be a positive integer");
    else
      scenario.d_nonrealtime_ms = args.d_nonrealtime_ms;
  }
  if (!args.profile_path.empty()) {
    const auto text = read_file(args.profile_path);
    if (!text) {
      report.add("--profile", "cannot read file");
    } else {
      std::istringstream ss(*text);
      std::vector<double> weights;
      double w = 0.0;
      while (ss >> w) weights.push_back(w);
      double sum = 0.0;
      bool good = true;
      for (double v : weights) {
        if (!(v >= 0.0) || !std::isfinite(v)) good = false;
        sum += v;
      }
      if (weights.size() != 48 || !good)
        report.add("--profile", "expected 48 finite non-negative weights");
      else if (std::abs(sum - 1.0) > 1e-9)
        report.add("--profile", "weights sum to " + std::to_string(sum) +
                                    ", expected 1 within 1e-9");
      else
        scenario.diurnal_profile = std::move(weights);
    }
  }

  if (!report.ok()) {
    std::cerr << report.to_text();
    return std::nullopt;
  }

  try {
    Network net = embedded ? std::move(*embedded)
                           : build_reference_network(scenario);
    // Cross-document checks: the scenario's node references must resolve.
    if (!net.node_index(scenario.gateway_id))
      throw NetworkError("gateway node '" + scenario.gateway_id +
                         "' not in network");
    if (!net.node_index(scenario.anchor_id))
      throw NetworkError("anchor node '" + scenario.anchor_id +
                         "' not in network");
    attachment_points(net, scenario);
    return LoadedConfig{std::move(net), std::move(scenario)};
  } catch (const NetworkError& e) {
    std::cerr << "/scenario: " << e.what() << "\n";
    return std::nullopt;
  }
}

std::optional<std::vector<AlgorithmSpec>> parse_algorithms(
    const std::string& list) {
  std::vector<AlgorithmSpec> specs;
  std::stringstream ss(list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto spec = parse_algorithm(token);
    if (!spec) {
      std::cerr << "--algorithms: unknown algorithm '" << token
                << "' (expected DMetric, InvCap, MDelay-<n> or Optimal)\n";
      return std::nullopt;
    }
    specs.push_back(*spec);
  }
  if (specs.empty()) {
    std::cerr << "--algorithms: at least one algorithm required\n";
    return std::nullopt;
  }
  return specs;
}

int cmd_validate(const CommonArgs& args) {
  const auto loaded = load_config(args);
  if (!loaded) return 1;
  if (!parse_algorithms(args.algorithms)) return 1;
  std::cout << "ok\n";
  return 0;
}

int cmd_discover(const CommonArgs& args) {
  const auto loaded = load_config(args);
  if (!loaded) return 1;
  const auto& [net, scenario] = *loaded;
  try {
    std::filesystem::create_directories(args.out_dir);
    const TopologyCatalog catalog = scenario_catalog(net, scenario);
    const int horizon = scenario_horizon_ms(scenario);
    for (const auto& [source, disc] : catalog) {
      const AugmentationResult aug =
          augment_leftover_links(disc.topologies, net, horizon);
      const auto path = std::filesystem::path(args.out_dir) /
                        ("topologies_" + net.node_id(source) + ".json");
      std::ofstream f(path, std::ios::binary);
      if (!f) {
        std::cerr << "cannot write " << path.string() << "\n";
        return 2;
      }
      f << topologies_to_json(net, disc, aug);
      std::cout << path.string() << ": " << disc.topologies.size()
                << " topologies, " << aug.unassigned.size()
                << " unassigned links\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "discover failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

void print_run_summary(const RunResult& result) {
  for (const std::string& e : result.errors) std::cerr << "error: " << e << "\n";
  std::cout << "busy interval: " << result.busy_interval << "\n";
  for (const std::string& f : result.files) std::cout << "wrote " << f << "\n";
}

int cmd_route(const CommonArgs& args, int interval) {
  const auto loaded = load_config(args);
  if (!loaded) return 1;
  const auto specs = parse_algorithms(args.algorithms);
  if (!specs) return 1;
  const auto& [net, scenario] = *loaded;
  const int target = interval >= 0 ? interval : scenario.first_interval;
  try {
    RunOptions opts;
    opts.algorithms = *specs;
    opts.out_dir = args.out_dir;
    const RunResult result = route_interval(net, scenario, target, opts);
    print_run_summary(result);
  } catch (const std::exception& e) {
    std::cerr << "route failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_run(const CommonArgs& args) {
  const auto loaded = load_config(args);
  if (!loaded) return 1;
  const auto specs = parse_algorithms(args.algorithms);
  if (!specs) return 1;
  const auto& [net, scenario] = *loaded;
  try {
    RunOptions opts;
    opts.algorithms = *specs;
    opts.out_dir = args.out_dir;
    const RunResult result = run_experiment(net, scenario, opts);
    print_run_summary(result);
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-topology routing experiments"};
  app.require_subcommand(1);

  CommonArgs validate_args, discover_args, route_args, run_args;
  int route_interval_arg = -1;

  CLI::App* validate =
      app.add_subcommand("validate", "check config documents and flags");
  add_common_flags(validate, validate_args);

  CLI::App* discover = app.add_subcommand(
      "discover", "write per-source logical topology sets as JSON");
  add_common_flags(discover, discover_args);

  CLI::App* route =
      app.add_subcommand("route", "route one interval and write its artifacts");
  add_common_flags(route, route_args);
  route->add_option("interval", route_interval_arg,
                    "interval index (default: first of the scenario range)");

  CLI::App* run = app.add_subcommand("run", "full interval sweep");
  add_common_flags(run, run_args);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return cmd_validate(validate_args);
  if (discover->parsed()) return cmd_discover(discover_args);
  if (route->parsed()) return cmd_route(route_args, route_interval_arg);
  return cmd_run(run_args);
}
