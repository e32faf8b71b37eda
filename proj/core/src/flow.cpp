#include "mtroute/flow.hpp"

#include <cmath>

namespace mtroute {

std::string_view to_string(TrafficClass cls) {
  return cls == TrafficClass::realtime ? "realtime" : "non_realtime";
}

TrafficDemand make_demand(const Network& net, int id, int src, int dst,
                          double volume_mbps, TrafficClass cls, int delay_bound_ms) {
  if (src < 0 || src >= net.node_count() || dst < 0 || dst >= net.node_count()) {
    throw NetworkError("demand endpoint out of range");
  }
  if (src == dst) throw NetworkError("demand endpoints must differ");
  if (!(volume_mbps >= 0.0) || !std::isfinite(volume_mbps)) {
    throw NetworkError("demand volume must be finite and >= 0");
  }
  if (delay_bound_ms <= 0) throw NetworkError("demand delay bound must be > 0");
  return TrafficDemand{id, src, dst, volume_mbps, cls, delay_bound_ms};
}

std::vector<const LogicalTopology*> feasible_topologies(
    std::span<const LogicalTopology> topologies, const TrafficDemand& demand) {
  std::vector<const LogicalTopology*> out;
  for (const LogicalTopology& t : topologies) {
    auto it = t.paths.find(demand.dst);
    if (it == t.paths.end()) continue;
    if (it->second.delay_ms() <= demand.delay_bound_ms) out.push_back(&t);
  }
  return out;
}

SelectionOutcome select_topology(std::span<const LogicalTopology* const> candidates,
                                 const TrafficDemand& demand) {
  SelectionOutcome outcome;
  if (candidates.empty()) {
    outcome.status = std::string(kSlaRejection);
    return outcome;
  }
  const LogicalTopology* best = nullptr;
  double best_gamma = -1.0;
  for (const LogicalTopology* t : candidates) {
    const Path& p = t->paths.at(demand.dst);
    double gamma = static_cast<double>(p.delay_ms()) / demand.delay_bound_ms;
    // Strictly-greater keeps the smallest topology index among equal gammas;
    // candidates arrive in ascending index order.
    if (gamma > best_gamma) {
      best_gamma = gamma;
      best = t;
    }
  }
  outcome.selection = TopologySelection{demand.id, best->index,
                                        best->paths.at(demand.dst), best_gamma};
  outcome.status = "ok";
  return outcome;
}

double slave_objective(std::span<const TopologySelection> selections) {
  double sum = 0.0;
  for (const TopologySelection& s : selections) {
    if (s.gamma > 1.0) throw NetworkError("selection violates its delay bound");
    sum += s.gamma;
  }
  return sum;
}

RoutingAssignment accumulate(const Network& net, std::vector<RoutedDemand> routed) {
  RoutingAssignment a;
  a.loads = zero_loads(net);
  for (const RoutedDemand& r : routed) {
    if (r.path.empty() || r.path.src(net) != r.demand.src ||
        r.path.dst(net) != r.demand.dst) {
      throw NetworkError("routed path does not connect its demand endpoints");
    }
    for (int l : r.path.links()) a.loads[l] += r.demand.volume_mbps;
  }
  a.routed = std::move(routed);
  return a;
}

}  // namespace mtroute
