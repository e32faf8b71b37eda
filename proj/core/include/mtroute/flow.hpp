#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtroute/network.hpp"
#include "mtroute/topology.hpp"

namespace mtroute {

enum class TrafficClass { realtime, non_realtime };

std::string_view to_string(TrafficClass cls);

// A unidirectional demand with a per-class delay bound D_tau.
struct TrafficDemand {
  int id = 0;
  int src = -1;
  int dst = -1;
  double volume_mbps = 0.0;
  TrafficClass cls = TrafficClass::non_realtime;
  int delay_bound_ms = 0;
};

// Validates endpoints, non-negative finite volume and positive delay bound.
TrafficDemand make_demand(const Network& net, int id, int src, int dst,
                          double volume_mbps, TrafficClass cls, int delay_bound_ms);

// Status string attached to demands that no topology can carry within SLA.
inline constexpr std::string_view kSlaRejection =
    "No feasible path is found to comply with SLA";

// Acceptance ratio gamma = path delay / delay bound; feasible iff <= 1.
struct TopologySelection {
  int demand_id = 0;
  int topology_index = 0;
  Path path;
  double gamma = 0.0;
};

struct SelectionOutcome {
  std::optional<TopologySelection> selection;
  std::string status;  // "ok" or kSlaRejection

  bool accepted() const { return selection.has_value(); }
};

// Topologies that hold a path to demand.dst with delay / bound <= 1,
// in ascending topology-index order.
std::vector<const LogicalTopology*> feasible_topologies(
    std::span<const LogicalTopology> topologies, const TrafficDemand& demand);

// Zero candidates reject the demand; one candidate is taken as-is; several
// candidates resolve to the largest gamma (the longest still-acceptable
// path), ties to the smallest topology index.
SelectionOutcome select_topology(std::span<const LogicalTopology* const> candidates,
                                 const TrafficDemand& demand);

// Sum of gammas over accepted selections; each must satisfy gamma <= 1.
double slave_objective(std::span<const TopologySelection> selections);

// One demand pinned to one path; topology_index 0 marks plain
// shortest-path routing outside any topology set.
struct RoutedDemand {
  TrafficDemand demand;
  Path path;
  int topology_index = 0;
};

struct RoutingAssignment {
  std::vector<RoutedDemand> routed;
  LinkLoadMap loads;
};

// Adds each routed demand's volume to every link on its path. Paths must
// connect the demand endpoints.
RoutingAssignment accumulate(const Network& net, std::vector<RoutedDemand> routed);

}  // namespace mtroute
