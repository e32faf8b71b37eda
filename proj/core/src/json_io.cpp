#include "mtroute/json_io.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

namespace mtroute {

namespace {

using nlohmann::ordered_json;

std::string ptr(const std::string& base, const std::string& field) {
  return base + "/" + field;
}

std::string ptr(const std::string& base, size_t index) {
  return base + "/" + std::to_string(index);
}

bool expect_object(const ordered_json& j, const std::string& loc,
                   ValidationReport& rep) {
  if (j.is_object()) return true;
  rep.add(loc, "expected an object");
  return false;
}

// Whitelist check; every key outside `known` is reported.
template <size_t N>
void flag_unknown_keys(const ordered_json& j, const std::string& base,
                       const std::array<const char*, N>& known,
                       ValidationReport& rep) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) rep.add(ptr(base, key), "unknown field");
  }
}

std::optional<double> take_number(const ordered_json& j, const std::string& loc,
                                  ValidationReport& rep) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (std::isfinite(v)) return v;
  }
  rep.add(loc, "expected a finite number");
  return std::nullopt;
}

std::optional<int> take_int(const ordered_json& j, const std::string& loc,
                            ValidationReport& rep) {
  if (j.is_number_integer()) return j.get<int>();
  rep.add(loc, "expected an integer");
  return std::nullopt;
}

std::optional<std::string> take_string(const ordered_json& j,
                                       const std::string& loc,
                                       ValidationReport& rep) {
  if (j.is_string() && !j.get<std::string>().empty())
    return j.get<std::string>();
  rep.add(loc, "expected a non-empty string");
  return std::nullopt;
}

std::optional<Network> parse_network_doc(const ordered_json& j,
                                         const std::string& base,
                                         ValidationReport& rep) {
  if (!expect_object(j, base.empty() ? "/" : base, rep)) return std::nullopt;
  flag_unknown_keys(j, base, std::array{"nodes", "links"}, rep);
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    rep.add(ptr(base, "nodes"), "expected an array of nodes");
    return std::nullopt;
  }
  if (!j.contains("links") || !j["links"].is_array()) {
    rep.add(ptr(base, "links"), "expected an array of links");
    return std::nullopt;
  }

  std::vector<Node> nodes;
  for (size_t i = 0; i < j["nodes"].size(); ++i) {
    const ordered_json& n = j["nodes"][i];
    const std::string loc = ptr(ptr(base, "nodes"), i);
    if (!expect_object(n, loc, rep)) continue;
    flag_unknown_keys(n, loc, std::array{"id", "kind"}, rep);
    Node node;
    if (!n.contains("id")) {
      rep.add(ptr(loc, "id"), "missing node id");
      continue;
    }
    if (auto id = take_string(n["id"], ptr(loc, "id"), rep)) node.id = *id;
    else continue;
    if (!n.contains("kind")) {
      rep.add(ptr(loc, "kind"), "missing node kind");
      continue;
    }
    if (auto ks = take_string(n["kind"], ptr(loc, "kind"), rep)) {
      if (auto kind = node_kind_from_string(*ks)) {
        node.kind = *kind;
      } else {
        rep.add(ptr(loc, "kind"),
                "unknown kind '" + *ks + "' (router|gateway|enb|relay)");
        continue;
      }
    } else {
      continue;
    }
    nodes.push_back(std::move(node));
  }

  std::vector<LinkSpec> links;
  for (size_t i = 0; i < j["links"].size(); ++i) {
    const ordered_json& l = j["links"][i];
    const std::string loc = ptr(ptr(base, "links"), i);
    if (!expect_object(l, loc, rep)) continue;
    flag_unknown_keys(l, loc,
                      std::array{"src", "dst", "capacity_mbps", "delay_ms"},
                      rep);
    LinkSpec spec;
    bool good = true;
    for (const char* key : {"src", "dst", "capacity_mbps", "delay_ms"}) {
      if (!l.contains(key)) {
        rep.add(ptr(loc, key), "missing field");
        good = false;
      }
    }
    if (!good) continue;
    if (auto s = take_string(l["src"], ptr(loc, "src"), rep)) spec.src = *s;
    else good = false;
    if (auto s = take_string(l["dst"], ptr(loc, "dst"), rep)) spec.dst = *s;
    else good = false;
    if (auto c = take_number(l["capacity_mbps"], ptr(loc, "capacity_mbps"), rep)) {
      if (*c <= 0.0) {
        rep.add(ptr(loc, "capacity_mbps"), "capacity must be positive");
        good = false;
      } else {
        spec.capacity_mbps = *c;
      }
    } else {
      good = false;
    }
    if (auto d = take_int(l["delay_ms"], ptr(loc, "delay_ms"), rep)) {
      if (*d <= 0) {
        rep.add(ptr(loc, "delay_ms"), "delay must be a positive integer");
        good = false;
      } else {
        spec.delay_ms = *d;
      }
    } else {
      good = false;
    }
    if (good) links.push_back(std::move(spec));
  }

  if (!rep.ok()) return std::nullopt;
  try {
    return Network::build(std::move(nodes), links);
  } catch (const NetworkError& e) {
    rep.add(base.empty() ? "/" : base, e.what());
    return std::nullopt;
  }
}

void parse_scenario_doc(const ordered_json& j, const std::string& base,
                        ScenarioConfig& cfg, ValidationReport& rep) {
  if (!expect_object(j, base, rep)) return;
  flag_unknown_keys(
      j, base,
      std::array{"backhaul_capacity_mbps", "wireless_capacity_mbps",
                 "link_delay_ms", "per_user_daily_mb",
                 "uplink_fraction_of_downlink", "realtime_share",
                 "d_realtime_ms", "d_nonrealtime_ms", "users_per_cell",
                 "diurnal_profile", "interval_range", "gateway_id",
                 "anchor_id"},
      rep);

  const auto positive_number = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (auto v = take_number(j[key], ptr(base, key), rep)) {
      if (*v > 0.0) out = *v;
      else rep.add(ptr(base, key), "must be positive");
    }
  };
  const auto non_negative_number = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (auto v = take_number(j[key], ptr(base, key), rep)) {
      if (*v >= 0.0) out = *v;
      else rep.add(ptr(base, key), "must be non-negative");
    }
  };
  const auto positive_int = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (auto v = take_int(j[key], ptr(base, key), rep)) {
      if (*v > 0) out = *v;
      else rep.add(ptr(base, key), "must be a positive integer");
    }
  };

  positive_number("backhaul_capacity_mbps", cfg.backhaul_capacity_mbps);
  positive_number("wireless_capacity_mbps", cfg.wireless_capacity_mbps);
  positive_int("link_delay_ms", cfg.link_delay_ms);
  non_negative_number("per_user_daily_mb", cfg.per_user_daily_mb);
  non_negative_number("uplink_fraction_of_downlink",
                      cfg.uplink_fraction_of_downlink);
  positive_int("d_realtime_ms", cfg.d_realtime_ms);
  positive_int("d_nonrealtime_ms", cfg.d_nonrealtime_ms);

  if (j.contains("realtime_share")) {
    if (auto v = take_number(j["realtime_share"], ptr(base, "realtime_share"),
                             rep)) {
      if (*v >= 0.0 && *v <= 1.0) cfg.realtime_share = *v;
      else rep.add(ptr(base, "realtime_share"), "must lie in [0,1]");
    }
  }

  if (j.contains("users_per_cell")) {
    const ordered_json& u = j["users_per_cell"];
    const std::string loc = ptr(base, "users_per_cell");
    if (!u.is_array() || u.size() != 3) {
      rep.add(loc, "expected an array of 3 user counts");
    } else {
      for (size_t i = 0; i < 3; ++i) {
        if (auto v = take_int(u[i], ptr(loc, i), rep)) {
          if (*v >= 0) cfg.users_per_cell[i] = *v;
          else rep.add(ptr(loc, i), "must be non-negative");
        }
      }
    }
  }

  if (j.contains("diurnal_profile")) {
    const ordered_json& p = j["diurnal_profile"];
    const std::string loc = ptr(base, "diurnal_profile");
    if (!p.is_array() || p.size() != 48) {
      rep.add(loc, "expected an array of 48 half-hour weights");
    } else {
      std::vector<double> weights;
      double sum = 0.0;
      bool good = true;
      for (size_t i = 0; i < 48; ++i) {
        if (auto v = take_number(p[i], ptr(loc, i), rep)) {
          if (*v < 0.0) {
            rep.add(ptr(loc, i), "must be non-negative");
            good = false;
          } else {
            weights.push_back(*v);
            sum += *v;
          }
        } else {
          good = false;
        }
      }
      if (good) {
        if (std::abs(sum - 1.0) > 1e-9) {
          rep.add(loc, "weights sum to " + std::to_string(sum) +
                           ", expected 1 within 1e-9");
        } else {
          cfg.diurnal_profile = std::move(weights);
        }
      }
    }
  }

  if (j.contains("interval_range")) {
    const ordered_json& r = j["interval_range"];
    const std::string loc = ptr(base, "interval_range");
    if (!r.is_array() || r.size() != 2) {
      rep.add(loc, "expected [first, last]");
    } else {
      const auto a = take_int(r[0], ptr(loc, size_t{0}), rep);
      const auto b = take_int(r[1], ptr(loc, size_t{1}), rep);
      if (a && b) {
        if (*a < 0 || *b < *a) {
          rep.add(loc, "need 0 <= first <= last");
        } else {
          cfg.first_interval = *a;
          cfg.last_interval = *b;
        }
      }
    }
  }

  if (j.contains("gateway_id")) {
    if (auto v = take_string(j["gateway_id"], ptr(base, "gateway_id"), rep))
      cfg.gateway_id = *v;
  }
  if (j.contains("anchor_id")) {
    if (auto v = take_string(j["anchor_id"], ptr(base, "anchor_id"), rep))
      cfg.anchor_id = *v;
  }
}

ordered_json link_pair(const Network& net, int link) {
  const Link& l = net.link(link);
  return ordered_json::array({net.node_id(l.src), net.node_id(l.dst)});
}

}  // namespace

void ValidationReport::add(std::string location, std::string message) {
  issues.push_back({std::move(location), std::move(message)});
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const ValidationIssue& i : issues) {
    out += i.location + ": " + i.message + "\n";
  }
  return out;
}

NetworkParse parse_network_json(const std::string& text) {
  NetworkParse out;
  const ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    out.report.add("", "invalid JSON");
    return out;
  }
  out.network = parse_network_doc(j, "", out.report);
  return out;
}

std::string network_to_json(const Network& net) {
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (const Node& n : net.nodes()) {
    j["nodes"].push_back({{"id", n.id}, {"kind", std::string(to_string(n.kind))}});
  }
  j["links"] = ordered_json::array();
  for (const Link& l : net.links()) {
    j["links"].push_back({{"src", net.node_id(l.src)},
                          {"dst", net.node_id(l.dst)},
                          {"capacity_mbps", l.capacity_mbps},
                          {"delay_ms", l.delay_ms}});
  }
  return j.dump(2) + "\n";
}

ConfigParse parse_config_json(const std::string& text) {
  ConfigParse out;
  out.scenario = default_scenario();
  const ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    out.report.add("", "invalid JSON");
    return out;
  }
  if (!expect_object(j, "/", out.report)) return out;
  flag_unknown_keys(j, "", std::array{"scenario", "network"}, out.report);
  if (j.contains("scenario"))
    parse_scenario_doc(j["scenario"], "/scenario", out.scenario, out.report);
  if (j.contains("network"))
    out.network = parse_network_doc(j["network"], "/network", out.report);
  return out;
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  ordered_json j;
  j["backhaul_capacity_mbps"] = cfg.backhaul_capacity_mbps;
  j["wireless_capacity_mbps"] = cfg.wireless_capacity_mbps;
  j["link_delay_ms"] = cfg.link_delay_ms;
  j["per_user_daily_mb"] = cfg.per_user_daily_mb;
  j["uplink_fraction_of_downlink"] = cfg.uplink_fraction_of_downlink;
  j["realtime_share"] = cfg.realtime_share;
  j["d_realtime_ms"] = cfg.d_realtime_ms;
  j["d_nonrealtime_ms"] = cfg.d_nonrealtime_ms;
  j["users_per_cell"] = cfg.users_per_cell;
  j["diurnal_profile"] = cfg.diurnal_profile;
  j["interval_range"] = ordered_json::array({cfg.first_interval, cfg.last_interval});
  j["gateway_id"] = cfg.gateway_id;
  j["anchor_id"] = cfg.anchor_id;
  return j.dump(2) + "\n";
}

std::string topologies_to_json(const Network& net, const DiscoveryResult& disc,
                               const AugmentationResult& aug) {
  ordered_json j;
  j["source"] = disc.source >= 0 ? net.node_id(disc.source) : "";
  j["D"] = disc.horizon_ms;
  j["topologies"] = ordered_json::array();
  for (const LogicalTopology& t : aug.topologies) {
    ordered_json jt;
    jt["k"] = t.index;
    jt["links"] = ordered_json::array();
    for (int l : t.links) jt["links"].push_back(link_pair(net, l));
    jt["paths"] = ordered_json::object();
    for (const auto& [dest, path] : t.paths) {
      ordered_json jp = ordered_json::array();
      for (int l : path.links()) jp.push_back(link_pair(net, l));
      jt["paths"][net.node_id(dest)] = std::move(jp);
    }
    j["topologies"].push_back(std::move(jt));
  }
  j["unassigned_links"] = ordered_json::array();
  for (int l : aug.unassigned) j["unassigned_links"].push_back(link_pair(net, l));
  return j.dump(2) + "\n";
}

std::string optimal_to_json(const Network& net, const OptimalSolution& sol) {
  ordered_json j;
  j["status"] = to_string(sol.status);
  j["z_star"] = sol.z_star;
  j["max_utilization"] = sol.max_utilization;
  j["message"] = sol.message;
  j["loads"] = ordered_json::array();
  for (int l = 0; l < net.link_count(); ++l) {
    const Link& link = net.link(l);
    j["loads"].push_back({{"src", net.node_id(link.src)},
                          {"dst", net.node_id(link.dst)},
                          {"load_mbps", sol.loads[static_cast<size_t>(l)]}});
  }
  j["commodities"] = ordered_json::array();
  for (const CommodityFlow& c : sol.commodities) {
    ordered_json jc;
    jc["src"] = net.node_id(c.src);
    jc["dst"] = net.node_id(c.dst);
    jc["rate_mbps"] = c.rate_mbps;
    jc["fractions"] = ordered_json::array();
    for (size_t l = 0; l < c.fraction.size(); ++l) {
      if (c.fraction[l] <= 0.0) continue;
      const Link& link = net.link(static_cast<int>(l));
      jc["fractions"].push_back({{"src", net.node_id(link.src)},
                                 {"dst", net.node_id(link.dst)},
                                 {"fraction", c.fraction[l]}});
    }
    j["commodities"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

}  // namespace mtroute
