#include "doctest.h"

#include <vector>

#include "helpers.hpp"
#include "mtroute/optimal.hpp"

using namespace mtroute;

namespace {

Network two_disjoint_paths(double cap_a, double cap_b) {
  std::vector<Node> nodes = {{"a", NodeKind::router},
                             {"b", NodeKind::router},
                             {"s", NodeKind::router},
                             {"t", NodeKind::router}};
  std::vector<LinkSpec> links = {{"s", "a", cap_a, 1},
                                 {"a", "t", cap_a, 1},
                                 {"s", "b", cap_b, 1},
                                 {"b", "t", cap_b, 1}};
  return Network::build(std::move(nodes), links);
}

TrafficDemand demand_of(const Network& net, int id, const std::string& src,
                        const std::string& dst, double mbps) {
  return make_demand(net, id, *net.node_index(src), *net.node_index(dst), mbps,
                     TrafficClass::non_realtime, 10);
}

}  // namespace

TEST_CASE("symmetric paths split the demand evenly") {
  const Network net = two_disjoint_paths(40.0, 40.0);
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "t", 10.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  REQUIRE(sol.status == OptimalStatus::ok);
  CHECK(sol.z_star == doctest::Approx(35.0));
  CHECK(sol.max_utilization == doctest::Approx(0.125));
  REQUIRE(sol.commodities.size() == 1);
  CHECK(sol.commodities[0].rate_mbps == doctest::Approx(10.0));

  for (int l = 0; l < net.link_count(); ++l) {
    CHECK(sol.loads[static_cast<size_t>(l)] == doctest::Approx(5.0));
    CHECK(sol.commodities[0].fraction[static_cast<size_t>(l)] ==
          doctest::Approx(0.5));
  }
  const OptimalCheck chk = verify_optimal(net, sol);
  CHECK(chk.ok);
  CHECK(chk.detail.empty());
}

TEST_CASE("asymmetric capacities equalize the residuals") {
  // 30 Mbps over a 40-path and a 20-path: 25/5 leaves 15 free on both.
  const Network net = two_disjoint_paths(40.0, 20.0);
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "t", 30.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  REQUIRE(sol.status == OptimalStatus::ok);
  CHECK(sol.z_star == doctest::Approx(15.0));
  CHECK(sol.max_utilization == doctest::Approx(0.625));

  const int s = *net.node_index("s");
  const int a = *net.node_index("a");
  const int b = *net.node_index("b");
  CHECK(sol.loads[static_cast<size_t>(*net.link_index(s, a))] ==
        doctest::Approx(25.0));
  CHECK(sol.loads[static_cast<size_t>(*net.link_index(s, b))] ==
        doctest::Approx(5.0));
  CHECK(verify_optimal(net, sol).ok);
}

TEST_CASE("a single route carries everything") {
  std::vector<Node> nodes = {{"s", NodeKind::router}, {"t", NodeKind::router}};
  const Network net = Network::build(std::move(nodes), {{"s", "t", 40.0, 1}});
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "t", 10.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  REQUIRE(sol.status == OptimalStatus::ok);
  CHECK(sol.z_star == doctest::Approx(30.0));
  CHECK(sol.max_utilization == doctest::Approx(0.25));
  CHECK(sol.commodities[0].fraction[0] == doctest::Approx(1.0));
  CHECK(verify_optimal(net, sol).ok);
}

TEST_CASE("demand beyond capacity reports the shortfall") {
  std::vector<Node> nodes = {{"s", NodeKind::router}, {"t", NodeKind::router}};
  const Network net = Network::build(std::move(nodes), {{"s", "t", 40.0, 1}});
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "t", 50.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  CHECK(sol.status == OptimalStatus::infeasible_capacity);
  CHECK_FALSE(sol.message.empty());
  CHECK(sol.z_star == doctest::Approx(-10.0));
  CHECK(sol.max_utilization == doctest::Approx(1.25));
  CHECK(sol.loads[0] == doctest::Approx(50.0));
  // The overload diagnosis is still a consistent flow description.
  CHECK(verify_optimal(net, sol).ok);
}

TEST_CASE("a disconnected endpoint pair fails loudly") {
  std::vector<Node> nodes = {{"s", NodeKind::router},
                             {"t", NodeKind::router},
                             {"z", NodeKind::router}};
  const Network net = Network::build(std::move(nodes), {{"s", "t", 40.0, 1}});
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "z", 1.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  CHECK(sol.status == OptimalStatus::solver_failure);
  CHECK(sol.message.find("disconnected") != std::string::npos);
}

TEST_CASE("demands on the same pair aggregate into one commodity") {
  const Network net = two_disjoint_paths(40.0, 40.0);
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "t", 4.0),
                                              demand_of(net, 1, "s", "t", 6.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  REQUIRE(sol.status == OptimalStatus::ok);
  REQUIRE(sol.commodities.size() == 1);
  CHECK(sol.commodities[0].rate_mbps == doctest::Approx(10.0));
  CHECK(sol.z_star == doctest::Approx(35.0));
}

TEST_CASE("two commodities share a bottleneck") {
  std::vector<Node> nodes = {{"m", NodeKind::router},
                             {"s1", NodeKind::router},
                             {"s2", NodeKind::router},
                             {"t", NodeKind::router}};
  std::vector<LinkSpec> links = {
      {"s1", "m", 40.0, 1}, {"s2", "m", 40.0, 1}, {"m", "t", 40.0, 1}};
  const Network net = Network::build(std::move(nodes), links);
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s1", "t", 10.0),
                                              demand_of(net, 1, "s2", "t", 10.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  REQUIRE(sol.status == OptimalStatus::ok);
  CHECK(sol.z_star == doctest::Approx(20.0));
  const int m = *net.node_index("m");
  const int t = *net.node_index("t");
  CHECK(sol.loads[static_cast<size_t>(*net.link_index(m, t))] ==
        doctest::Approx(20.0));
  CHECK(verify_optimal(net, sol).ok);
}

TEST_CASE("zero-rate commodities keep unit conservation without load") {
  std::vector<Node> nodes = {{"s", NodeKind::router}, {"t", NodeKind::router}};
  const Network net = Network::build(std::move(nodes), {{"s", "t", 40.0, 1}});
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "t", 0.0)};

  const OptimalSolution sol = solve_optimal(net, demands);
  REQUIRE(sol.status == OptimalStatus::ok);
  CHECK(sol.z_star == doctest::Approx(40.0));
  CHECK(sol.loads[0] == doctest::Approx(0.0));
  CHECK(sol.commodities[0].fraction[0] == doctest::Approx(1.0));
  CHECK(verify_optimal(net, sol).ok);
}

TEST_CASE("no demands leave the network untouched") {
  const Network net = testutil::tri_net();
  const OptimalSolution sol = solve_optimal(net, {});
  REQUIRE(sol.status == OptimalStatus::ok);
  CHECK(sol.commodities.empty());
  CHECK(sol.z_star == doctest::Approx(10.0));
  CHECK(sol.max_utilization == doctest::Approx(0.0));
  CHECK(verify_optimal(net, sol).ok);
}

TEST_CASE("the recheck flags corrupted solutions") {
  const Network net = two_disjoint_paths(40.0, 40.0);
  const std::vector<TrafficDemand> demands = {demand_of(net, 0, "s", "t", 10.0)};
  const OptimalSolution good = solve_optimal(net, demands);
  REQUIRE(verify_optimal(net, good).ok);

  SUBCASE("tampered load") {
    OptimalSolution bad = good;
    bad.loads[0] += 1.0;
    const OptimalCheck chk = verify_optimal(net, bad);
    CHECK_FALSE(chk.ok);
    CHECK(chk.max_violation > 0.5);
    CHECK_FALSE(chk.detail.empty());
  }
  SUBCASE("tampered fraction breaks conservation") {
    OptimalSolution bad = good;
    bad.commodities[0].fraction[0] += 0.25;
    CHECK_FALSE(verify_optimal(net, bad).ok);
  }
  SUBCASE("tampered residual score") {
    OptimalSolution bad = good;
    bad.z_star += 0.5;
    CHECK_FALSE(verify_optimal(net, bad).ok);
  }
  SUBCASE("tampered utilization") {
    OptimalSolution bad = good;
    bad.max_utilization = 0.9;
    CHECK_FALSE(verify_optimal(net, bad).ok);
  }
  SUBCASE("fraction above one") {
    OptimalSolution bad = good;
    // Push flow around a: 1.25 out of s->a, compensate nothing -> multiple
    // violations; the check reports the first and the magnitude.
    for (auto& f : bad.commodities[0].fraction) f *= 2.5;
    CHECK_FALSE(verify_optimal(net, bad).ok);
  }
}
