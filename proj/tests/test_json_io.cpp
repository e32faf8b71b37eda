#include "doctest.h"

#include <algorithm>
#include <string>

#include "json.hpp"

#include "helpers.hpp"
#include "mtroute/json_io.hpp"
#include "mtroute/optimal.hpp"
#include "mtroute/topology.hpp"

using namespace mtroute;
using ordered_json = nlohmann::ordered_json;

namespace {

bool has_issue(const ValidationReport& rep, const std::string& location,
               const std::string& message_part) {
  return std::any_of(rep.issues.begin(), rep.issues.end(),
                     [&](const ValidationIssue& i) {
                       return i.location == location &&
                              i.message.find(message_part) != std::string::npos;
                     });
}

ordered_json base_network_doc() {
  return ordered_json{
      {"nodes", {{{"id", "a"}, {"kind", "router"}}, {{"id", "b"}, {"kind", "enb"}}}},
      {"links",
       {{{"src", "a"}, {"dst", "b"}, {"capacity_mbps", 40.0}, {"delay_ms", 1}}}}};
}

}  // namespace

TEST_CASE("network documents round-trip") {
  const ScenarioConfig cfg = default_scenario();
  const Network net = build_reference_network(cfg);

  const std::string text = network_to_json(net);
  const NetworkParse parsed = parse_network_json(text);
  REQUIRE(parsed.report.ok());
  REQUIRE(parsed.network.has_value());

  const Network& back = *parsed.network;
  REQUIRE(back.node_count() == net.node_count());
  REQUIRE(back.link_count() == net.link_count());
  for (int i = 0; i < net.node_count(); ++i) {
    CHECK(back.node_id(i) == net.node_id(i));
    CHECK(back.node(i).kind == net.node(i).kind);
  }
  for (int l = 0; l < net.link_count(); ++l) {
    CHECK(back.link(l).src == net.link(l).src);
    CHECK(back.link(l).dst == net.link(l).dst);
    CHECK(back.link(l).capacity_mbps ==
          doctest::Approx(net.link(l).capacity_mbps));
    CHECK(back.link(l).delay_ms == net.link(l).delay_ms);
  }
}

TEST_CASE("network validation pins the offending JSON pointer") {
  SUBCASE("invalid JSON") {
    const NetworkParse p = parse_network_json("{not json");
    CHECK_FALSE(p.network.has_value());
    REQUIRE_FALSE(p.report.ok());
    CHECK(p.report.issues[0].location.empty());
    CHECK(p.report.issues[0].message == "invalid JSON");
  }
  SUBCASE("negative capacity") {
    ordered_json doc = base_network_doc();
    doc["links"][0]["capacity_mbps"] = -40.0;
    const NetworkParse p = parse_network_json(doc.dump());
    CHECK_FALSE(p.network.has_value());
    CHECK(has_issue(p.report, "/links/0/capacity_mbps",
                    "capacity must be positive"));
  }
  SUBCASE("zero delay") {
    ordered_json doc = base_network_doc();
    doc["links"][0]["delay_ms"] = 0;
    const NetworkParse p = parse_network_json(doc.dump());
    CHECK(has_issue(p.report, "/links/0/delay_ms", "delay must be a positive"));
  }
  SUBCASE("missing link field") {
    ordered_json doc = base_network_doc();
    doc["links"][0].erase("src");
    const NetworkParse p = parse_network_json(doc.dump());
    CHECK(has_issue(p.report, "/links/0/src", "missing field"));
  }
  SUBCASE("unknown node kind") {
    ordered_json doc = base_network_doc();
    doc["nodes"][0]["kind"] = "teapot";
    const NetworkParse p = parse_network_json(doc.dump());
    REQUIRE_FALSE(p.report.ok());
    CHECK(p.report.issues[0].location == "/nodes/0/kind");
  }
  SUBCASE("nodes must be an array") {
    ordered_json doc = base_network_doc();
    doc["nodes"] = 17;
    const NetworkParse p = parse_network_json(doc.dump());
    CHECK(has_issue(p.report, "/nodes", "expected an array"));
  }
  SUBCASE("semantic violations surface at the document root") {
    ordered_json doc = base_network_doc();
    doc["links"].push_back(doc["links"][0]);  // duplicate directed link
    const NetworkParse p = parse_network_json(doc.dump());
    CHECK_FALSE(p.network.has_value());
    CHECK_FALSE(p.report.ok());
  }
}

TEST_CASE("an empty config document keeps every default") {
  const ConfigParse p = parse_config_json("{}");
  REQUIRE(p.ok());
  CHECK_FALSE(p.network.has_value());

  const ScenarioConfig def = default_scenario();
  CHECK(p.scenario.backhaul_capacity_mbps == def.backhaul_capacity_mbps);
  CHECK(p.scenario.realtime_share == def.realtime_share);
  CHECK(p.scenario.users_per_cell == def.users_per_cell);
  CHECK(p.scenario.diurnal_profile == def.diurnal_profile);
  CHECK(p.scenario.first_interval == def.first_interval);
  CHECK(p.scenario.last_interval == def.last_interval);
  CHECK(p.scenario.gateway_id == def.gateway_id);
}

TEST_CASE("scenario overrides apply field by field") {
  ordered_json doc;
  doc["scenario"] = {{"realtime_share", 0.55},
                     {"users_per_cell", {10, 20, 30}},
                     {"interval_range", {10, 20}},
                     {"d_realtime_ms", 5},
                     {"gateway_id", "cr"}};
  const ConfigParse p = parse_config_json(doc.dump());
  REQUIRE(p.ok());
  CHECK(p.scenario.realtime_share == doctest::Approx(0.55));
  CHECK(p.scenario.users_per_cell == std::array<int, 3>{10, 20, 30});
  CHECK(p.scenario.first_interval == 10);
  CHECK(p.scenario.last_interval == 20);
  CHECK(p.scenario.d_realtime_ms == 5);
  CHECK(p.scenario.gateway_id == "cr");
  // Untouched fields keep their defaults.
  CHECK(p.scenario.d_nonrealtime_ms == 10);
}

TEST_CASE("config validation issues carry scenario-relative pointers") {
  SUBCASE("unknown keys") {
    const ConfigParse top = parse_config_json(R"({"bogus": 1})");
    CHECK(has_issue(top.report, "/bogus", "unknown field"));

    const ConfigParse nested =
        parse_config_json(R"({"scenario": {"bogus": 1}})");
    CHECK(has_issue(nested.report, "/scenario/bogus", "unknown field"));
  }
  SUBCASE("share outside the unit interval") {
    const ConfigParse p =
        parse_config_json(R"({"scenario": {"realtime_share": 1.5}})");
    CHECK(has_issue(p.report, "/scenario/realtime_share", "must lie in [0,1]"));
  }
  SUBCASE("non-positive delay bound") {
    const ConfigParse p =
        parse_config_json(R"({"scenario": {"d_realtime_ms": 0}})");
    CHECK(has_issue(p.report, "/scenario/d_realtime_ms",
                    "must be a positive integer"));
  }
  SUBCASE("malformed interval range") {
    CHECK(has_issue(
        parse_config_json(R"({"scenario": {"interval_range": [5]}})").report,
        "/scenario/interval_range", "expected [first, last]"));
    CHECK(has_issue(
        parse_config_json(R"({"scenario": {"interval_range": [-1, 3]}})").report,
        "/scenario/interval_range", "need 0 <= first <= last"));
  }
  SUBCASE("the document must be an object") {
    const ConfigParse p = parse_config_json("[1, 2]");
    CHECK(has_issue(p.report, "/", "expected an object"));
  }
}

TEST_CASE("a profile must sum to one within a nano") {
  ordered_json doc;
  auto& weights = doc["scenario"]["diurnal_profile"];
  weights = ordered_json::array();
  for (int i = 0; i < 47; ++i) weights.push_back(0.02);
  weights.push_back(0.04);  // sums to 0.98

  const ConfigParse p = parse_config_json(doc.dump());
  REQUIRE_FALSE(p.ok());
  CHECK(has_issue(p.report, "/scenario/diurnal_profile", "weights sum to"));
  CHECK(has_issue(p.report, "/scenario/diurnal_profile", "0.98"));
  CHECK(has_issue(p.report, "/scenario/diurnal_profile",
                  "expected 1 within 1e-9"));

  // A flat profile summing to 1 is accepted and stored verbatim.
  ordered_json good;
  auto& gw = good["scenario"]["diurnal_profile"];
  gw = ordered_json::array();
  for (int i = 0; i < 48; ++i) gw.push_back(1.0 / 48.0);
  const ConfigParse q = parse_config_json(good.dump());
  REQUIRE(q.ok());
  CHECK(q.scenario.diurnal_profile.size() == 48);
  CHECK(q.scenario.diurnal_profile[7] == doctest::Approx(1.0 / 48.0));

  // Wrong cardinality.
  ordered_json short_doc;
  auto& sw = short_doc["scenario"]["diurnal_profile"];
  sw = ordered_json::array();
  for (int i = 0; i < 10; ++i) sw.push_back(0.1);
  CHECK(has_issue(parse_config_json(short_doc.dump()).report,
                  "/scenario/diurnal_profile",
                  "expected an array of 48 half-hour weights"));
}

TEST_CASE("embedded networks parse under the /network pointer") {
  ordered_json doc;
  doc["network"] = base_network_doc();
  const ConfigParse p = parse_config_json(doc.dump());
  REQUIRE(p.ok());
  REQUIRE(p.network.has_value());
  CHECK(p.network->node_count() == 2);

  doc["network"]["links"][0]["capacity_mbps"] = 0.0;
  const ConfigParse bad = parse_config_json(doc.dump());
  CHECK_FALSE(bad.ok());
  CHECK(has_issue(bad.report, "/network/links/0/capacity_mbps",
                  "capacity must be positive"));
}

TEST_CASE("scenario serialization round-trips through the config parser") {
  ScenarioConfig cfg = default_scenario();
  cfg.realtime_share = 0.37;
  cfg.users_per_cell = {111, 222, 333};
  cfg.first_interval = 5;
  cfg.last_interval = 40;
  cfg.anchor_id = "rta";

  const std::string wrapped = "{\"scenario\": " + scenario_to_json(cfg) + "}";
  const ConfigParse p = parse_config_json(wrapped);
  REQUIRE(p.ok());
  CHECK(p.scenario.realtime_share == doctest::Approx(0.37));
  CHECK(p.scenario.users_per_cell == cfg.users_per_cell);
  CHECK(p.scenario.first_interval == 5);
  CHECK(p.scenario.last_interval == 40);
  CHECK(p.scenario.anchor_id == "rta");
  CHECK(p.scenario.diurnal_profile == cfg.diurnal_profile);
}

TEST_CASE("topology sets serialize with links, paths and leftovers") {
  const Network net = testutil::tri_net();
  const int s = *net.node_index("s");
  const DiscoveryResult disc = discover_topologies(net, 3, s);
  const AugmentationResult aug = augment_leftover_links(disc.topologies, net, 3);

  const ordered_json j = ordered_json::parse(topologies_to_json(net, disc, aug));
  CHECK(j["source"] == "s");
  CHECK(j["D"] == 3);
  REQUIRE(j["topologies"].size() == 2);

  const auto& t1 = j["topologies"][0];
  CHECK(t1["k"] == 1);
  const ordered_json t1_links =
      ordered_json::array({{"m", "t"}, {"s", "m"}});
  CHECK(t1["links"] == t1_links);
  REQUIRE(t1["paths"].contains("m"));
  REQUIRE(t1["paths"].contains("t"));
  CHECK(t1["paths"]["m"] == ordered_json::array({{"s", "m"}}));
  CHECK(t1["paths"]["t"] == ordered_json::array({{"s", "m"}, {"m", "t"}}));

  const auto& t2 = j["topologies"][1];
  CHECK(t2["k"] == 2);
  CHECK(t2["links"] == ordered_json::array({{"s", "t"}}));
  CHECK_FALSE(t2["paths"].contains("m"));

  CHECK(j["unassigned_links"].empty());
}

TEST_CASE("exact-baseline solutions serialize their flows") {
  std::vector<Node> nodes = {{"s", NodeKind::router}, {"t", NodeKind::router}};
  const Network net = Network::build(std::move(nodes), {{"s", "t", 40.0, 1}});
  const std::vector<TrafficDemand> demands = {make_demand(
      net, 0, *net.node_index("s"), *net.node_index("t"), 10.0,
      TrafficClass::non_realtime, 10)};
  const OptimalSolution sol = solve_optimal(net, demands);

  const ordered_json j = ordered_json::parse(optimal_to_json(net, sol));
  CHECK(j["status"] == "ok");
  CHECK(j["z_star"].get<double>() == doctest::Approx(30.0));
  CHECK(j["max_utilization"].get<double>() == doctest::Approx(0.25));
  REQUIRE(j["loads"].size() == 1);
  CHECK(j["loads"][0]["load_mbps"].get<double>() == doctest::Approx(10.0));
  REQUIRE(j["commodities"].size() == 1);
  CHECK(j["commodities"][0]["src"] == "s");
  REQUIRE(j["commodities"][0]["fractions"].size() == 1);
  CHECK(j["commodities"][0]["fractions"][0]["fraction"].get<double>() ==
        doctest::Approx(1.0));
}

TEST_CASE("reports render one location-message line per issue") {
  ValidationReport rep;
  CHECK(rep.ok());
  CHECK(rep.to_text().empty());

  rep.add("/links/3/capacity_mbps", "capacity must be positive");
  rep.add("", "invalid JSON");
  CHECK_FALSE(rep.ok());
  CHECK(rep.to_text() ==
        "/links/3/capacity_mbps: capacity must be positive\n: invalid JSON\n");
}
