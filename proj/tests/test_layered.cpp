#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "mtroute/layered_graph.hpp"

using namespace mtroute;

namespace {

Network two_nodes_delay2() {
  std::vector<Node> nodes = {{"a", NodeKind::router}, {"b", NodeKind::router}};
  return Network::build(std::move(nodes), {{"a", "b", 5.0, 2}});
}

}  // namespace

TEST_CASE("copy count is nodes times horizon") {
  std::mt19937 rng(7);
  const Network net = testutil::random_digraph(rng, 4, 4, 3);
  const LayeredGraph lg = LayeredGraph::build(net, 6);
  CHECK(lg.copy_node_count() == 24);
  CHECK(lg.horizon() == 6);
}

TEST_CASE("a delay-2 link spawns one arc per fitting layer pair") {
  const Network net = two_nodes_delay2();
  const int a = *net.node_index("a");
  const int b = *net.node_index("b");

  SUBCASE("horizon 3 leaves exactly one slot") {
    const LayeredGraph lg = LayeredGraph::build(net, 3);
    const auto arcs = lg.arcs();
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].from_node == a);
    CHECK(arcs[0].from_layer == 1);
    CHECK(arcs[0].to_node == b);
    CHECK(arcs[0].to_layer == 3);
    CHECK(arcs[0].link == 0);
    CHECK(arcs[0].capacity == doctest::Approx(5.0));
  }
  SUBCASE("horizon 1 and 2 leave no slot for a delay-2 link") {
    CHECK(LayeredGraph::build(net, 1).arcs().empty());
    CHECK(LayeredGraph::build(net, 2).arcs().empty());
  }
  SUBCASE("horizon 5 leaves three slots") {
    const auto arcs = LayeredGraph::build(net, 5).arcs();
    REQUIRE(arcs.size() == 3);
    for (size_t i = 0; i < arcs.size(); ++i) {
      CHECK(arcs[i].from_layer == static_cast<int>(i) + 1);
      CHECK(arcs[i].to_layer == static_cast<int>(i) + 3);
    }
  }
  SUBCASE("horizon below 1 is rejected") {
    CHECK_THROWS_AS(LayeredGraph::build(net, 0), NetworkError);
  }
}

TEST_CASE("arc back-references cover exactly the links fitting the horizon") {
  std::mt19937 rng(99);
  for (int inst = 0; inst < 40; ++inst) {
    const Network net = testutil::random_digraph(rng, 2, 6, 4);
    for (int d = 1; d <= 6; ++d) {
      const LayeredGraph lg = LayeredGraph::build(net, d);
      std::set<int> seen;
      std::vector<int> per_link(static_cast<size_t>(net.link_count()), 0);
      for (const LayeredArc& arc : lg.arcs()) {
        seen.insert(arc.link);
        per_link[static_cast<size_t>(arc.link)]++;
        CHECK(arc.to_layer - arc.from_layer == net.link(arc.link).delay_ms);
        CHECK(arc.from_layer >= 1);
        CHECK(arc.to_layer <= d);
      }
      for (int l = 0; l < net.link_count(); ++l) {
        const int delay = net.link(l).delay_ms;
        CHECK(seen.count(l) == (delay <= d - 1 ? 1u : 0u));
        CHECK(per_link[static_cast<size_t>(l)] == std::max(0, d - delay));
      }
    }
  }
}

TEST_CASE("layered paths map back to original paths") {
  // a -> b (1 ms) -> c (2 ms); the layered walk lands on layer 4.
  std::vector<Node> nodes = {{"a", NodeKind::router},
                             {"b", NodeKind::router},
                             {"c", NodeKind::router}};
  const Network net = Network::build(std::move(nodes),
                                     {{"a", "b", 1.0, 1}, {"b", "c", 1.0, 2}});
  const int a = *net.node_index("a");
  const int b = *net.node_index("b");
  const int c = *net.node_index("c");
  const int ab = *net.link_index(a, b);
  const int bc = *net.link_index(b, c);
  const LayeredGraph lg = LayeredGraph::build(net, 4);

  SUBCASE("well-formed walk") {
    LayeredPath lp;
    lp.copies = {{a, 1}, {b, 2}, {c, 4}};
    lp.links = {ab, bc};
    const Path p = to_original_path(lg, lp);
    CHECK(p.node_sequence(net) == std::vector<int>{a, b, c});
    CHECK(p.delay_ms() == 3);
  }
  SUBCASE("empty walk maps to the empty path") {
    CHECK(to_original_path(lg, LayeredPath{}).empty());
  }
  SUBCASE("walks must start at layer 1") {
    LayeredPath lp;
    lp.copies = {{a, 2}, {b, 3}};
    lp.links = {ab};
    CHECK_THROWS_AS(to_original_path(lg, lp), NetworkError);
  }
  SUBCASE("layer steps must equal link delays") {
    LayeredPath lp;
    lp.copies = {{a, 1}, {b, 3}};  // claims 2 layers for a 1 ms link
    lp.links = {ab};
    CHECK_THROWS_AS(to_original_path(lg, lp), NetworkError);
  }
  SUBCASE("walks must cite the link connecting their copies") {
    LayeredPath lp;
    lp.copies = {{a, 1}, {c, 3}};
    lp.links = {bc};
    CHECK_THROWS_AS(to_original_path(lg, lp), NetworkError);
  }
  SUBCASE("total delay must stay below the horizon") {
    const LayeredGraph tight = LayeredGraph::build(net, 3);
    LayeredPath lp;
    lp.copies = {{a, 1}, {b, 2}, {c, 4}};
    lp.links = {ab, bc};
    CHECK_THROWS_AS(to_original_path(tight, lp), NetworkError);
  }
}

TEST_CASE("hop-shortest layered search with tie-break and first-arc pinning") {
  const Network net = testutil::tri_net();
  const int s = *net.node_index("s");
  const int m = *net.node_index("m");
  const int t = *net.node_index("t");
  const int sm = *net.link_index(s, m);
  const int st = *net.link_index(s, t);

  SUBCASE("prefers fewer hops") {
    const LayeredGraph lg = LayeredGraph::build(net, 3);
    const auto lp = shortest_layered_path(lg, s, t);
    REQUIRE(lp.has_value());
    CHECK(lp->hops() == 1);
    CHECK(to_original_path(lg, *lp).node_sequence(net) == std::vector<int>{s, t});
  }
  SUBCASE("a pinned first arc reroutes the walk") {
    const LayeredGraph lg = LayeredGraph::build(net, 3);
    const auto lp = shortest_layered_path(lg, s, t, sm);
    REQUIRE(lp.has_value());
    CHECK(lp->hops() == 2);
    CHECK(to_original_path(lg, *lp).node_sequence(net) ==
          std::vector<int>{s, m, t});
  }
  SUBCASE("the pinned arc must fit the horizon end to end") {
    const LayeredGraph lg = LayeredGraph::build(net, 2);
    CHECK_FALSE(shortest_layered_path(lg, s, t, sm).has_value());
    const auto direct = shortest_layered_path(lg, s, t, st);
    REQUIRE(direct.has_value());
    CHECK(direct->hops() == 1);
  }
  SUBCASE("source equals destination yields the empty walk") {
    const LayeredGraph lg = LayeredGraph::build(net, 3);
    const auto lp = shortest_layered_path(lg, s, s);
    REQUIRE(lp.has_value());
    CHECK(lp->empty());
  }
  SUBCASE("removed links disappear from the search") {
    LayeredGraph lg = LayeredGraph::build(net, 3);
    lg.remove_link_copies(st);
    CHECK_FALSE(lg.link_alive(st));
    CHECK(lg.alive_link_count() == net.link_count() - 1);
    CHECK(lg.source_out_degree(s) == 1);
    const auto lp = shortest_layered_path(lg, s, t);
    REQUIRE(lp.has_value());
    CHECK(to_original_path(lg, *lp).node_sequence(net) ==
          std::vector<int>{s, m, t});
  }
}

TEST_CASE("equal hop counts resolve to the smaller node sequence") {
  std::vector<Node> nodes = {{"a", NodeKind::router},
                             {"b", NodeKind::router},
                             {"s", NodeKind::router},
                             {"t", NodeKind::router}};
  std::vector<LinkSpec> links = {{"s", "a", 10.0, 1},
                                 {"a", "t", 10.0, 1},
                                 {"s", "b", 10.0, 1},
                                 {"b", "t", 10.0, 1}};
  const Network net = Network::build(std::move(nodes), links);
  const LayeredGraph lg = LayeredGraph::build(net, 3);
  const int s = *net.node_index("s");
  const int a = *net.node_index("a");
  const int t = *net.node_index("t");

  const auto lp = shortest_layered_path(lg, s, t);
  REQUIRE(lp.has_value());
  CHECK(to_original_path(lg, *lp).node_sequence(net) ==
        std::vector<int>{s, a, t});
}

TEST_CASE("super arcs attach the virtual endpoints") {
  const Network net = testutil::tri_net();
  const LayeredGraph lg = LayeredGraph::build(net, 4);
  const int s = *net.node_index("s");
  const int t = *net.node_index("t");

  const SuperArc src = lg.super_source_arc(s);
  CHECK(src.node == s);
  CHECK(src.layer == 1);
  CHECK(std::isinf(src.capacity));

  const auto sinks = lg.super_sink_arcs(t);
  REQUIRE(sinks.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(sinks[static_cast<size_t>(k)].node == t);
    CHECK(sinks[static_cast<size_t>(k)].layer == k + 1);
  }
}

TEST_CASE("every found layered walk is simple and fits the horizon") {
  std::mt19937 rng(4242);
  for (int inst = 0; inst < 30; ++inst) {
    const Network net = testutil::random_digraph(rng, 2, 6, 3);
    for (int d = 2; d <= 8; d += 3) {
      const LayeredGraph lg = LayeredGraph::build(net, d);
      for (int t = 1; t < net.node_count(); ++t) {
        const auto lp = shortest_layered_path(lg, 0, t);
        if (!lp.has_value()) continue;
        const Path p = to_original_path(lg, *lp);  // throws on any violation
        CHECK(p.delay_ms() < d);
        if (!p.empty()) CHECK(p.dst(net) == t);
      }
    }
  }
}
