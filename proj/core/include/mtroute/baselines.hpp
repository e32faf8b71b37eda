#pragma once

#include <map>
#include <span>

#include "mtroute/flow.hpp"
#include "mtroute/shortest_path.hpp"
#include "mtroute/topology.hpp"

namespace mtroute {

// Every demand pinned to the minimum-weight path. Demands without any path
// are listed as unreachable and excluded from the loads.
struct ShortestRouteReport {
  RoutingAssignment assignment;
  std::vector<TrafficDemand> unreachable;
};

ShortestRouteReport route_shortest(const Network& net, const WeightMap& weights,
                                   std::span<const TrafficDemand> demands);

// Discovery output per demand source.
using TopologyCatalog = std::map<int, DiscoveryResult>;

TopologyCatalog discover_catalog(const Network& net, int horizon_ms,
                                 std::span<const TrafficDemand> demands);

struct SelectionTraceRow {
  TrafficDemand demand;
  int chosen_k = 0;       // 0 when rejected or anchor-routed realtime
  int path_delay_ms = 0;  // -1 when rejected
  double gamma = 0.0;
  std::string status;
};

struct MdelayReport {
  RoutingAssignment assignment;
  std::vector<TopologySelection> selections;  // accepted non-realtime picks
  std::vector<TrafficDemand> rejected;
  std::vector<SelectionTraceRow> trace;       // one row per demand, input order
};

// Hybrid anchor routing: realtime demands ride the shortest-delay loop-free
// path through the central anchor; non-realtime demands go to the feasible
// topology with the longest still-acceptable path. Demands whose feasible
// set is empty are rejected and carry kSlaRejection in the trace.
MdelayReport route_mdelay(const Network& net, const TopologyCatalog& catalog,
                          std::span<const TrafficDemand> demands, int central_anchor);

}  // namespace mtroute
