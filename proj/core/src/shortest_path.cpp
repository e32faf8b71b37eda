#include "mtroute/shortest_path.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

namespace mtroute {
namespace {

struct Label {
  double dist;
  std::vector<int> seq;  // node indices from s
  int node;

  bool operator>(const Label& o) const {
    if (dist != o.dist) return dist > o.dist;
    return seq > o.seq;
  }
};

bool better(double dist, const std::vector<int>& seq, double best_dist,
            const std::vector<int>& best_seq) {
  if (dist != best_dist) return dist < best_dist;
  return seq < best_seq;
}

}  // namespace

WeightMap unit_weights(const Network& net) {
  return WeightMap(static_cast<size_t>(net.link_count()), 1.0);
}

WeightMap delay_weights(const Network& net) {
  WeightMap w(static_cast<size_t>(net.link_count()));
  for (int l = 0; l < net.link_count(); ++l) w[l] = net.link(l).delay_ms;
  return w;
}

std::optional<Path> shortest_path(const Network& net, const WeightMap& weights,
                                  int s, int t) {
  if (s == t) return Path();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best_dist(net.node_count(), inf);
  std::vector<std::vector<int>> best_seq(net.node_count());
  std::vector<int> best_link(net.node_count(), -1);  // incoming link on best path
  std::vector<int> best_prev(net.node_count(), -1);

  std::priority_queue<Label, std::vector<Label>, std::greater<Label>> pq;
  best_dist[s] = 0.0;
  best_seq[s] = {s};
  pq.push(Label{0.0, {s}, s});

  while (!pq.empty()) {
    Label cur = pq.top();
    pq.pop();
    if (cur.dist != best_dist[cur.node] || cur.seq != best_seq[cur.node]) continue;
    if (cur.node == t) break;
    for (int l : net.out_links(cur.node)) {
      const Link& link = net.link(l);
      // Settled labels are final under non-negative weights; skipping nodes
      // already on the current sequence keeps paths simple.
      if (std::find(cur.seq.begin(), cur.seq.end(), link.dst) != cur.seq.end()) continue;
      double nd = cur.dist + weights[l];
      std::vector<int> nseq = cur.seq;
      nseq.push_back(link.dst);
      if (better(nd, nseq, best_dist[link.dst], best_seq[link.dst])) {
        best_dist[link.dst] = nd;
        best_seq[link.dst] = nseq;
        best_link[link.dst] = l;
        best_prev[link.dst] = cur.node;
        pq.push(Label{nd, std::move(nseq), link.dst});
      }
    }
  }

  if (best_dist[t] == inf) return std::nullopt;
  std::vector<int> links;
  for (int n = t; n != s; n = best_prev[n]) links.push_back(best_link[n]);
  std::reverse(links.begin(), links.end());
  return Path::of_links(net, std::move(links));
}

namespace {

// Exhaustive minimum-weight simple s->t path constrained to pass through via.
// Only used when the greedy two-segment concatenation loops; instances are
// small so the bounded DFS is fine.
struct ViaSearch {
  const Network& net;
  const WeightMap& weights;
  int t;
  int via;
  double best_w = std::numeric_limits<double>::infinity();
  std::vector<int> best_seq;
  std::vector<int> best_links;
  std::vector<char> visited;
  std::vector<int> seq;
  std::vector<int> links;

  void dfs(int node, double w) {
    if (node == t) {
      if (!visited[via]) return;
      std::vector<int> cand_seq = seq;
      if (better(w, cand_seq, best_w, best_seq)) {
        best_w = w;
        best_seq = std::move(cand_seq);
        best_links = links;
      }
      return;
    }
    for (int l : net.out_links(node)) {
      const Link& link = net.link(l);
      if (visited[link.dst]) continue;
      double nw = w + weights[l];
      if (nw > best_w) continue;
      // Equal weight can still win on lexicographic order at t.
      visited[link.dst] = 1;
      seq.push_back(link.dst);
      links.push_back(l);
      dfs(link.dst, nw);
      links.pop_back();
      seq.pop_back();
      visited[link.dst] = 0;
    }
  }
};

}  // namespace

std::optional<Path> shortest_path_via(const Network& net, const WeightMap& weights,
                                      int s, int via, int t) {
  if (s == via) return shortest_path(net, weights, s, t);
  if (via == t) return shortest_path(net, weights, s, t);
  if (s == t) return std::nullopt;

  auto p1 = shortest_path(net, weights, s, via);
  auto p2 = shortest_path(net, weights, via, t);
  if (!p1 || !p2) return std::nullopt;

  std::set<int> seen;
  for (int n : p1->node_sequence(net)) seen.insert(n);
  bool disjoint = true;
  std::vector<int> tail = p2->node_sequence(net);
  for (size_t i = 1; i < tail.size(); ++i) {
    if (seen.count(tail[i])) {
      disjoint = false;
      break;
    }
  }
  if (disjoint) {
    std::vector<int> links = p1->links();
    links.insert(links.end(), p2->links().begin(), p2->links().end());
    return Path::of_links(net, std::move(links));
  }

  ViaSearch search{net, weights, t, via, /*best_w=*/std::numeric_limits<double>::infinity(),
                   {}, {}, std::vector<char>(net.node_count(), 0), {s}, {}};
  search.visited[s] = 1;
  search.dfs(s, 0.0);
  if (search.best_links.empty() && !(s == t)) {
    if (search.best_w == std::numeric_limits<double>::infinity()) return std::nullopt;
  }
  return Path::of_links(net, search.best_links);
}

}  // namespace mtroute
