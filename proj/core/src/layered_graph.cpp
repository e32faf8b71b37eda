#include "mtroute/layered_graph.hpp"

#include <algorithm>
#include <queue>

namespace mtroute {

LayeredGraph LayeredGraph::build(const Network& net, int horizon_ms) {
  if (horizon_ms < 1) throw NetworkError("layered horizon must be >= 1");
  LayeredGraph lg;
  lg.net_ = &net;
  lg.horizon_ = horizon_ms;
  lg.alive_.assign(static_cast<size_t>(net.link_count()), 1);
  return lg;
}

int LayeredGraph::alive_link_count() const {
  int n = 0;
  for (char a : alive_) n += a;
  return n;
}

std::vector<LayeredArc> LayeredGraph::arcs() const {
  std::vector<LayeredArc> out;
  for (int l = 0; l < net_->link_count(); ++l) {
    if (!alive_[l]) continue;
    const Link& link = net_->link(l);
    for (int k = 1; k + link.delay_ms <= horizon_; ++k) {
      out.push_back(LayeredArc{link.src, k, link.dst, k + link.delay_ms, l,
                               link.capacity_mbps});
    }
  }
  return out;
}

int LayeredGraph::source_out_degree(int node) const {
  int n = 0;
  for (int l : net_->out_links(node)) {
    if (alive_[l] && 1 + net_->link(l).delay_ms <= horizon_) ++n;
  }
  return n;
}

std::vector<SuperArc> LayeredGraph::super_sink_arcs(int dest) const {
  std::vector<SuperArc> out;
  out.reserve(static_cast<size_t>(horizon_));
  for (int k = 1; k <= horizon_; ++k) out.push_back(SuperArc{dest, k});
  return out;
}

Path to_original_path(const LayeredGraph& lg, const LayeredPath& lpath) {
  const Network& net = lg.network();
  if (lpath.empty()) {
    if (lpath.copies.size() > 1) throw NetworkError("layered path without links");
    return Path();
  }
  if (lpath.copies.size() != lpath.links.size() + 1) {
    throw NetworkError("layered path copies and links disagree");
  }
  if (lpath.copies.front().second != 1) {
    throw NetworkError("layered path must start at a layer-1 copy");
  }
  for (size_t i = 0; i < lpath.links.size(); ++i) {
    const auto [u, ul] = lpath.copies[i];
    const auto [v, vl] = lpath.copies[i + 1];
    if (ul < 1 || vl > lg.horizon()) throw NetworkError("layered path leaves the horizon");
    int l = lpath.links[i];
    const Link& link = net.link(l);
    if (link.src != u || link.dst != v) throw NetworkError("layered arc has no original link");
    if (vl - ul != link.delay_ms) throw NetworkError("layered arc layer step != link delay");
  }
  Path p = Path::of_links(net, lpath.links);
  // Final layer minus one is the path delay; strictly below the horizon.
  if (p.delay_ms() != lpath.copies.back().second - 1 || p.delay_ms() >= lg.horizon()) {
    throw NetworkError("layered path delay out of bounds");
  }
  return p;
}

namespace {

struct StateLabel {
  int dist = -1;               // hops; -1 = unreached
  std::vector<int> seq;        // original node indices from the source
  int prev_state = -1;
  int prev_link = -1;
};

}  // namespace

std::optional<LayeredPath> shortest_layered_path(const LayeredGraph& lg, int source,
                                                 int dest, int first_link) {
  const Network& net = lg.network();
  const int d = lg.horizon();
  auto state_of = [d](int node, int layer) { return node * (d + 1) + layer; };

  std::vector<StateLabel> labels(static_cast<size_t>(net.node_count() * (d + 1) + 1));

  struct QItem {
    int dist;
    std::vector<int> seq;
    int state;
    int layer;
    int node;
    bool operator>(const QItem& o) const {
      if (dist != o.dist) return dist > o.dist;
      return seq > o.seq;
    }
  };
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;

  auto push = [&](int node, int layer, int dist, std::vector<int> seq, int prev_state,
                  int prev_link) {
    int st = state_of(node, layer);
    StateLabel& lab = labels[st];
    if (lab.dist != -1 && (lab.dist < dist || (lab.dist == dist && lab.seq <= seq))) {
      return;
    }
    lab.dist = dist;
    lab.seq = seq;
    lab.prev_state = prev_state;
    lab.prev_link = prev_link;
    pq.push(QItem{dist, std::move(seq), st, layer, node});
  };

  if (first_link >= 0) {
    const Link& link = net.link(first_link);
    if (link.src != source || !lg.link_alive(first_link) ||
        1 + link.delay_ms > d) {
      return std::nullopt;
    }
    push(link.dst, 1 + link.delay_ms, 1, {source, link.dst}, state_of(source, 1),
         first_link);
    labels[state_of(source, 1)] = StateLabel{0, {source}, -1, -1};
  } else {
    push(source, 1, 0, {source}, -1, -1);
  }

  while (!pq.empty()) {
    QItem cur = pq.top();
    pq.pop();
    StateLabel& lab = labels[cur.state];
    if (lab.dist != cur.dist || lab.seq != cur.seq) continue;
    for (int l : net.out_links(cur.node)) {
      if (!lg.link_alive(l)) continue;
      const Link& link = net.link(l);
      int nl = cur.layer + link.delay_ms;
      if (nl > d) continue;
      if (std::find(cur.seq.begin(), cur.seq.end(), link.dst) != cur.seq.end()) continue;
      std::vector<int> nseq = cur.seq;
      nseq.push_back(link.dst);
      push(link.dst, nl, cur.dist + 1, std::move(nseq), cur.state, l);
    }
  }

  // Super-sink: best copy of dest across layers.
  int best_state = -1;
  for (int layer = 1; layer <= d; ++layer) {
    int st = state_of(dest, layer);
    const StateLabel& lab = labels[st];
    if (lab.dist == -1) continue;
    if (best_state == -1) {
      best_state = st;
      continue;
    }
    const StateLabel& best = labels[best_state];
    if (lab.dist < best.dist || (lab.dist == best.dist && lab.seq < best.seq)) {
      best_state = st;
    }
  }
  if (best_state == -1) return std::nullopt;

  LayeredPath lp;
  int st = best_state;
  while (st != -1) {
    int node = st / (d + 1);
    int layer = st % (d + 1);
    lp.copies.emplace_back(node, layer);
    if (labels[st].prev_link != -1) lp.links.push_back(labels[st].prev_link);
    st = labels[st].prev_state;
  }
  std::reverse(lp.copies.begin(), lp.copies.end());
  std::reverse(lp.links.begin(), lp.links.end());
  return lp;
}

}  // namespace mtroute
