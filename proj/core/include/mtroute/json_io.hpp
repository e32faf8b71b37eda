#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtroute/network.hpp"
#include "mtroute/optimal.hpp"
#include "mtroute/scenario.hpp"
#include "mtroute/topology.hpp"

namespace mtroute {

// One schema or invariant violation, anchored by a JSON pointer such as
// "/links/3/capacity_mbps".
struct ValidationIssue {
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  void add(std::string location, std::string message);
  std::string to_text() const;  // one "location: message" line per issue
};

// Document shape: {"nodes":[{"id","kind"}],
//                  "links":[{"src","dst","capacity_mbps","delay_ms"}]}.
struct NetworkParse {
  std::optional<Network> network;
  ValidationReport report;
};

NetworkParse parse_network_json(const std::string& text);

std::string network_to_json(const Network& net);

// Experiment config document: optional "scenario" object holding
// ScenarioConfig fields (absent fields keep defaults) and an optional
// embedded "network" document; without one the reference layout is built
// from the scenario. The profile, when given, must sum to 1 within 1e-9.
struct ConfigParse {
  std::optional<Network> network;
  ScenarioConfig scenario;
  ValidationReport report;
  bool ok() const { return report.ok(); }
};

ConfigParse parse_config_json(const std::string& text);

std::string scenario_to_json(const ScenarioConfig& cfg);

// Topology-set document: {"source","D","topologies":[{"k","links":[...],
// "paths":{dest:[links]}}],"unassigned_links":[...]}, links as
// ["src_id","dst_id"] pairs. Topologies are the post-augmentation ones.
std::string topologies_to_json(const Network& net, const DiscoveryResult& disc,
                               const AugmentationResult& aug);

std::string optimal_to_json(const Network& net, const OptimalSolution& sol);

}  // namespace mtroute
