#pragma once

// Shared builders for the test suite.

#include <random>
#include <string>
#include <vector>

#include "mtroute/network.hpp"

namespace testutil {

// s/m/t triangle with unit delays: a direct s->t link plus the s->m->t detour.
inline mtroute::Network tri_net() {
  using namespace mtroute;
  std::vector<Node> nodes = {{"m", NodeKind::router},
                             {"s", NodeKind::router},
                             {"t", NodeKind::router}};
  std::vector<LinkSpec> links = {
      {"s", "t", 10.0, 1}, {"s", "m", 10.0, 1}, {"m", "t", 10.0, 1}};
  return Network::build(std::move(nodes), links);
}

// Random digraph with every node reachable from n0: a random arborescence
// rooted at n0 plus independent extra arcs. Node ids n0..n9 sort numerically.
inline mtroute::Network random_digraph(std::mt19937& rng, int min_nodes,
                                       int max_nodes, int max_delay,
                                       double extra_arc_prob = 0.3) {
  using namespace mtroute;
  std::uniform_int_distribution<int> node_count(min_nodes, max_nodes);
  std::uniform_int_distribution<int> delay(1, max_delay);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> capacity(10.0, 100.0);

  const int n = node_count(rng);
  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i)
    nodes.push_back({"n" + std::to_string(i), NodeKind::router});

  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  std::vector<LinkSpec> links;
  const auto add = [&](int a, int b) {
    if (a == b || present[a][b]) return;
    present[a][b] = true;
    links.push_back({"n" + std::to_string(a), "n" + std::to_string(b),
                     capacity(rng), delay(rng)});
  };
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    add(parent(rng), i);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && coin(rng) < extra_arc_prob) add(a, b);
  return Network::build(std::move(nodes), links);
}

// All simple paths from s to t as link-index sequences, depth-first.
inline std::vector<std::vector<int>> all_simple_paths(const mtroute::Network& net,
                                                      int s, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  std::vector<bool> visited(static_cast<size_t>(net.node_count()), false);
  const auto dfs = [&](auto&& self, int u) -> void {
    if (u == t) {
      out.push_back(stack);
      return;
    }
    visited[static_cast<size_t>(u)] = true;
    for (int l : net.out_links(u)) {
      const int v = net.link(l).dst;
      if (visited[static_cast<size_t>(v)]) continue;
      stack.push_back(l);
      self(self, v);
      stack.pop_back();
    }
    visited[static_cast<size_t>(u)] = false;
  };
  dfs(dfs, s);
  return out;
}

}  // namespace testutil
