#include "mtroute/topology.hpp"

#include <algorithm>
#include <set>

namespace mtroute {

bool LogicalTopology::has_link(int link) const {
  return std::binary_search(links.begin(), links.end(), link);
}

DiscoveryResult discover_topologies(const Network& net, int horizon_ms, int source) {
  DiscoveryResult result;
  result.source = source;
  result.horizon_ms = horizon_ms;

  LayeredGraph lg = LayeredGraph::build(net, horizon_ms);
  if (lg.source_out_degree(source) == 0) {
    result.status = DiscoveryStatus::no_topologies;
    return result;
  }
  result.status = DiscoveryStatus::ok;

  while (true) {
    int first_arc = -1;
    for (int l : net.out_links(source)) {
      if (lg.link_alive(l) && 1 + net.link(l).delay_ms <= horizon_ms) {
        first_arc = l;
        break;
      }
    }
    if (first_arc == -1) break;

    LogicalTopology topo;
    topo.index = static_cast<int>(result.topologies.size()) + 1;
    std::set<int> links;
    for (int t = 0; t < net.node_count(); ++t) {
      if (t == source) continue;
      auto lp = shortest_layered_path(lg, source, t, first_arc);
      if (!lp) continue;
      Path p = to_original_path(lg, *lp);
      for (int l : p.links()) links.insert(l);
      topo.paths.emplace(t, std::move(p));
    }
    topo.links.assign(links.begin(), links.end());
    for (int l : topo.links) lg.remove_link_copies(l);
    result.topologies.push_back(std::move(topo));
  }
  return result;
}

AugmentationResult augment_leftover_links(std::vector<LogicalTopology> topologies,
                                          const Network& net, int horizon_ms) {
  AugmentationResult result;

  std::set<int> assigned;
  for (const LogicalTopology& t : topologies) assigned.insert(t.links.begin(), t.links.end());

  // Per topology: node -> delays of every stored-path prefix entering it.
  // Only on-path links count as parents; attached leftovers carry no paths.
  struct EntryInfo {
    bool entered = false;
    int max_prefix_delay = 0;
  };
  std::vector<std::vector<EntryInfo>> entries(topologies.size());
  for (size_t ti = 0; ti < topologies.size(); ++ti) {
    entries[ti].assign(static_cast<size_t>(net.node_count()), EntryInfo{});
    for (const auto& [dest, path] : topologies[ti].paths) {
      int prefix = 0;
      for (int l : path.links()) {
        prefix += net.link(l).delay_ms;
        EntryInfo& e = entries[ti][static_cast<size_t>(net.link(l).dst)];
        e.entered = true;
        e.max_prefix_delay = std::max(e.max_prefix_delay, prefix);
      }
    }
  }

  for (int l = 0; l < net.link_count(); ++l) {
    if (assigned.count(l)) continue;
    const Link& leftover = net.link(l);
    bool placed = false;
    for (size_t ti = 0; ti < topologies.size() && !placed; ++ti) {
      const EntryInfo& e = entries[ti][static_cast<size_t>(leftover.src)];
      if (!e.entered) continue;
      if (e.max_prefix_delay + leftover.delay_ms >= horizon_ms) continue;
      auto& links = topologies[ti].links;
      links.insert(std::upper_bound(links.begin(), links.end(), l), l);
      result.added.push_back(AugmentationRecord{l, topologies[ti].index});
      placed = true;
    }
    if (!placed) result.unassigned.push_back(l);
  }

  result.topologies = std::move(topologies);
  return result;
}

}  // namespace mtroute
