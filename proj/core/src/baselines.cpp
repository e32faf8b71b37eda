#include "mtroute/baselines.hpp"

#include <algorithm>
#include <set>

namespace mtroute {

ShortestRouteReport route_shortest(const Network& net, const WeightMap& weights,
                                   std::span<const TrafficDemand> demands) {
  ShortestRouteReport report;
  std::vector<RoutedDemand> routed;
  for (const TrafficDemand& d : demands) {
    auto p = shortest_path(net, weights, d.src, d.dst);
    if (!p) {
      report.unreachable.push_back(d);
      continue;
    }
    routed.push_back(RoutedDemand{d, std::move(*p), 0});
  }
  report.assignment = accumulate(net, std::move(routed));
  return report;
}

TopologyCatalog discover_catalog(const Network& net, int horizon_ms,
                                 std::span<const TrafficDemand> demands) {
  std::set<int> sources;
  for (const TrafficDemand& d : demands) sources.insert(d.src);
  TopologyCatalog catalog;
  for (int s : sources) catalog.emplace(s, discover_topologies(net, horizon_ms, s));
  return catalog;
}

MdelayReport route_mdelay(const Network& net, const TopologyCatalog& catalog,
                          std::span<const TrafficDemand> demands, int central_anchor) {
  MdelayReport report;
  WeightMap delays = delay_weights(net);
  std::vector<RoutedDemand> routed;

  for (const TrafficDemand& d : demands) {
    SelectionTraceRow row;
    row.demand = d;
    if (d.cls == TrafficClass::realtime) {
      // Anchored routing is unconditional for realtime traffic; the ratio is
      // still recorded so SLA pressure stays visible in the trace.
      auto p = shortest_path_via(net, delays, d.src, central_anchor, d.dst);
      if (!p || p->empty()) {
        row.chosen_k = 0;
        row.path_delay_ms = -1;
        row.status = "no anchor path";
        report.rejected.push_back(d);
      } else {
        row.chosen_k = 0;
        row.path_delay_ms = p->delay_ms();
        row.gamma = static_cast<double>(p->delay_ms()) / d.delay_bound_ms;
        row.status = "ok";
        routed.push_back(RoutedDemand{d, std::move(*p), 0});
      }
      report.trace.push_back(std::move(row));
      continue;
    }

    auto it = catalog.find(d.src);
    SelectionOutcome outcome;
    if (it == catalog.end() || it->second.status != DiscoveryStatus::ok) {
      outcome.status = std::string(kSlaRejection);
    } else {
      auto candidates = feasible_topologies(it->second.topologies, d);
      outcome = select_topology(candidates, d);
    }
    if (outcome.accepted()) {
      const TopologySelection& sel = *outcome.selection;
      row.chosen_k = sel.topology_index;
      row.path_delay_ms = sel.path.delay_ms();
      row.gamma = sel.gamma;
      row.status = outcome.status;
      routed.push_back(RoutedDemand{d, sel.path, sel.topology_index});
      report.selections.push_back(sel);
    } else {
      row.chosen_k = 0;
      row.path_delay_ms = -1;
      row.gamma = 0.0;
      row.status = outcome.status;
      report.rejected.push_back(d);
    }
    report.trace.push_back(std::move(row));
  }

  report.assignment = accumulate(net, std::move(routed));
  return report;
}

}  // namespace mtroute
