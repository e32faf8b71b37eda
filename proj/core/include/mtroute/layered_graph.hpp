#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "mtroute/network.hpp"

namespace mtroute {

// One arc of the layered expansion: copy (from_node, from_layer) to copy
// (to_node, to_layer), backed by an original link. to_layer - from_layer
// always equals the link delay and the arc carries the link capacity.
struct LayeredArc {
  int from_node = -1;
  int from_layer = 0;
  int to_node = -1;
  int to_layer = 0;
  int link = -1;
  double capacity = 0.0;
};

// Attachment arc of the virtual super-source or a per-destination super-sink.
// Attachment arcs never constrain flow, so their capacity is unbounded.
struct SuperArc {
  int node = -1;
  int layer = 0;
  double capacity = std::numeric_limits<double>::infinity();
};

// Path through the layered graph, stored as (node, layer) copies plus the
// original links backing each hop. Starts at a layer-1 copy.
struct LayeredPath {
  std::vector<std::pair<int, int>> copies;
  std::vector<int> links;

  bool empty() const { return links.empty(); }
  int hops() const { return static_cast<int>(links.size()); }
};

// Layered expansion of a network for a delay horizon D: D copies of every
// node; a link (u, v) with delay d spawns one arc per layer pair (k, k + d)
// that fits inside 1..D. Any layer-1-rooted path maps back to an original
// path whose delay is strictly below D. Links can be removed at original-link
// granularity, which drops every layered copy at once.
class LayeredGraph {
 public:
  static LayeredGraph build(const Network& net, int horizon_ms);

  const Network& network() const { return *net_; }
  int horizon() const { return horizon_; }
  int copy_node_count() const { return net_->node_count() * horizon_; }

  bool link_alive(int link) const { return alive_[link] != 0; }
  void remove_link_copies(int link) { alive_[link] = 0; }
  int alive_link_count() const;

  // Alive arcs, ordered by (link, from_layer).
  std::vector<LayeredArc> arcs() const;

  // Out-degree of the layer-1 copy of node, counting alive arcs.
  int source_out_degree(int node) const;

  SuperArc super_source_arc(int source) const { return SuperArc{source, 1}; }
  std::vector<SuperArc> super_sink_arcs(int dest) const;

 private:
  const Network* net_ = nullptr;
  int horizon_ = 0;
  std::vector<char> alive_;
};

// Maps a layered path back to the original links. Requires a layer-1 start,
// consistent copies (each hop's layer step equals its link delay) and a total
// delay strictly below the horizon. Throws NetworkError otherwise.
Path to_original_path(const LayeredGraph& lg, const LayeredPath& lpath);

// Hop-count shortest layered path from the layer-1 copy of source to any copy
// of dest (the per-destination super-sink). Ties break on the lexicographic
// node-index sequence. first_link, when >= 0, forces the initial arc.
// Returned paths never repeat an original node.
std::optional<LayeredPath> shortest_layered_path(const LayeredGraph& lg, int source,
                                                 int dest, int first_link = -1);

}  // namespace mtroute
