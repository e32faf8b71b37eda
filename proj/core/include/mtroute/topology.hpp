#pragma once

#include <map>
#include <vector>

#include "mtroute/layered_graph.hpp"
#include "mtroute/network.hpp"

namespace mtroute {

// One discovered logical topology: the union of the per-destination shortest
// layered paths claimed in one round, plus any links attached later by
// augmentation. Stored paths all obey delay < horizon. A destination missing
// from paths is unreachable inside this topology.
struct LogicalTopology {
  int index = 0;                 // 1-based
  std::vector<int> links;        // sorted, unique
  std::map<int, Path> paths;     // destination node -> path

  bool has_link(int link) const;
};

enum class DiscoveryStatus { ok, no_topologies };

struct DiscoveryResult {
  DiscoveryStatus status = DiscoveryStatus::no_topologies;
  int source = -1;
  int horizon_ms = 0;
  std::vector<LogicalTopology> topologies;
};

// Peels pairwise link-disjoint topologies off the layered graph, one per
// outgoing link of the source's layer-1 copy: each round fixes the next
// remaining first arc, collects hop-count shortest layered paths to every
// other node through it, then deletes every layered copy of the collected
// links so no later topology can reuse them. Rounds stop when the source
// copy has no outgoing arcs left, so the source out-degree drops by exactly
// one per round. A source with zero out-degree yields an empty result with
// DiscoveryStatus::no_topologies.
DiscoveryResult discover_topologies(const Network& net, int horizon_ms, int source);

struct AugmentationRecord {
  int link = -1;
  int topology_index = 0;
};

struct AugmentationResult {
  std::vector<LogicalTopology> topologies;
  std::vector<AugmentationRecord> added;
  std::vector<int> unassigned;  // leftover links no topology could take
};

// Attaches every link absent from all topologies to the lowest-indexed
// topology holding a parent link (an on-path link ending at the leftover's
// source node), provided extending any stored path prefix over the leftover
// stays strictly below the horizon. Links that fit nowhere are reported as
// unassigned.
AugmentationResult augment_leftover_links(std::vector<LogicalTopology> topologies,
                                          const Network& net, int horizon_ms);

}  // namespace mtroute
