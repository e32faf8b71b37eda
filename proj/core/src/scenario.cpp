#include "mtroute/scenario.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

namespace mtroute {

namespace {

int require_node(const Network& net, const std::string& id) {
  const auto idx = net.node_index(id);
  if (!idx) throw NetworkError("scenario references unknown node '" + id + "'");
  return *idx;
}

double profile_sum(const ScenarioConfig& cfg) {
  if (cfg.diurnal_profile.size() != 48)
    throw NetworkError("diurnal profile must hold 48 half-hour weights");
  double sum = 0.0;
  for (double w : cfg.diurnal_profile) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw NetworkError("profile weights must be finite and non-negative");
    sum += w;
  }
  if (sum <= 0.0) throw NetworkError("profile weights must not all be zero");
  return sum;
}

}  // namespace

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  // Diurnal shape: overnight trough around 03:00-05:00, a daytime plateau
  // and a residential evening peak at 20:00-22:00. Normalized to sum 1.
  cfg.diurnal_profile = {
      0.020, 0.016,  // 00
      0.012, 0.010,  // 01
      0.008, 0.007,  // 02
      0.006, 0.006,  // 03
      0.006, 0.006,  // 04
      0.007, 0.008,  // 05
      0.010, 0.012,  // 06
      0.011, 0.013,  // 07
      0.015, 0.017,  // 08
      0.018, 0.018,  // 09
      0.018, 0.019,  // 10
      0.019, 0.019,  // 11
      0.020, 0.020,  // 12
      0.019, 0.019,  // 13
      0.018, 0.018,  // 14
      0.018, 0.019,  // 15
      0.020, 0.021,  // 16
      0.027, 0.029,  // 17
      0.032, 0.035,  // 18
      0.040, 0.044,  // 19
      0.050, 0.054,  // 20
      0.055, 0.053,  // 21
      0.046, 0.038,  // 22
      0.030, 0.024,  // 23
  };
  const double sum = std::accumulate(cfg.diurnal_profile.begin(),
                                     cfg.diurnal_profile.end(), 0.0);
  for (double& w : cfg.diurnal_profile) w /= sum;
  return cfg;
}

Network build_reference_network(const ScenarioConfig& cfg) {
  std::vector<Node> nodes = {
      {"pgw", NodeKind::gateway}, {"cr", NodeKind::router},
      {"rta", NodeKind::router},  {"rtb", NodeKind::router},
      {"ar1", NodeKind::router},  {"ar2", NodeKind::router},
      {"ar3", NodeKind::router},  {"enb1", NodeKind::enb},
      {"enb2", NodeKind::enb},    {"enb3", NodeKind::enb},
      {"r1a", NodeKind::relay},   {"r1b", NodeKind::relay},
      {"r2a", NodeKind::relay},   {"r2b", NodeKind::relay},
      {"r3a", NodeKind::relay},   {"r3b", NodeKind::relay},
  };

  std::vector<LinkSpec> links;
  auto both = [&links, &cfg](const std::string& a, const std::string& b,
                             double capacity) {
    links.push_back({a, b, capacity, cfg.link_delay_ms});
    links.push_back({b, a, capacity, cfg.link_delay_ms});
  };
  const double wired = cfg.backhaul_capacity_mbps;
  const double air = cfg.wireless_capacity_mbps;

  // Backhaul: the central router reaches each eNB in one hop; the regional
  // routers detour through aggregation routers with overlapping coverage.
  both("pgw", "cr", wired);
  both("pgw", "rta", wired);
  both("pgw", "rtb", wired);
  both("cr", "enb1", wired);
  both("cr", "enb2", wired);
  both("cr", "enb3", wired);
  both("rta", "ar1", wired);
  both("rta", "ar2", wired);
  both("rtb", "ar2", wired);
  both("rtb", "ar3", wired);
  both("ar1", "enb1", wired);
  both("ar2", "enb2", wired);
  both("ar3", "enb3", wired);

  // Wireless mesh: eNB triangle plus two dual-homed relays per cell.
  both("enb1", "enb2", air);
  both("enb2", "enb3", air);
  both("enb1", "enb3", air);
  both("r1a", "enb1", air);
  both("r1a", "enb2", air);
  both("r1b", "enb1", air);
  both("r1b", "enb3", air);
  both("r2a", "enb2", air);
  both("r2a", "enb3", air);
  both("r2b", "enb2", air);
  both("r2b", "enb1", air);
  both("r3a", "enb3", air);
  both("r3a", "enb1", air);
  both("r3b", "enb3", air);
  both("r3b", "enb2", air);

  return Network::build(std::move(nodes), links);
}

std::vector<AttachmentPoint> attachment_points(const Network& net,
                                               const ScenarioConfig& cfg) {
  std::vector<AttachmentPoint> points;
  std::vector<std::pair<std::string, int>> relays;  // id, users
  for (int cell = 1; cell <= 3; ++cell) {
    const int users = cfg.users_per_cell[static_cast<size_t>(cell - 1)];
    if (users < 0) throw NetworkError("negative user count");
    const std::string suffix = std::to_string(cell);
    const int direct = users / 2;
    const int pool = users - direct;
    points.push_back({require_node(net, "enb" + suffix), direct});
    relays.emplace_back("r" + suffix + "a", pool / 2);
    relays.emplace_back("r" + suffix + "b", pool - pool / 2);
  }
  for (const auto& [id, users] : relays)
    points.push_back({require_node(net, id), users});
  return points;
}

double interval_weight(const ScenarioConfig& cfg, int interval) {
  if (interval < 0) throw NetworkError("interval must be non-negative");
  const double sum = profile_sum(cfg);
  return cfg.diurnal_profile[static_cast<size_t>(interval % 48)] / sum;
}

std::vector<TrafficDemand> interval_demands(const Network& net,
                                            const ScenarioConfig& cfg,
                                            int interval,
                                            double realtime_share) {
  if (!(realtime_share >= 0.0 && realtime_share <= 1.0))
    throw NetworkError("realtime share must lie in [0,1]");
  if (cfg.d_realtime_ms <= 0 || cfg.d_nonrealtime_ms <= 0)
    throw NetworkError("delay bounds must be positive");
  if (!(cfg.per_user_daily_mb >= 0.0) ||
      !(cfg.uplink_fraction_of_downlink >= 0.0))
    throw NetworkError("volumes and ratios must be non-negative");

  const int gw = require_node(net, cfg.gateway_id);
  const double w = interval_weight(cfg, interval);
  // Half-hour interval: MB/day -> Mbps is volume * weight * 8 / 1800.
  const double dl_daily_mb =
      cfg.per_user_daily_mb / (1.0 + cfg.uplink_fraction_of_downlink);
  const double to_mbps = w * 8.0 / 1800.0;

  std::vector<TrafficDemand> demands;
  int next_id = 0;
  for (const AttachmentPoint& pt : attachment_points(net, cfg)) {
    const double dl = pt.users * dl_daily_mb * to_mbps;
    const double ul = dl * cfg.uplink_fraction_of_downlink;
    const auto emit = [&](int src, int dst, double mbps, TrafficClass cls) {
      const int bound = cls == TrafficClass::realtime ? cfg.d_realtime_ms
                                                      : cfg.d_nonrealtime_ms;
      demands.push_back(make_demand(net, next_id++, src, dst, mbps, cls, bound));
    };
    emit(gw, pt.node, dl * realtime_share, TrafficClass::realtime);
    emit(gw, pt.node, dl * (1.0 - realtime_share), TrafficClass::non_realtime);
    emit(pt.node, gw, ul * realtime_share, TrafficClass::realtime);
    emit(pt.node, gw, ul * (1.0 - realtime_share), TrafficClass::non_realtime);
  }
  return demands;
}

std::vector<TrafficDemand> merge_classes(const Network& net,
                                         std::span<const TrafficDemand> demands) {
  std::map<std::pair<int, int>, std::pair<double, int>> agg;  // volume, bound
  for (const TrafficDemand& d : demands) {
    auto& [volume, bound] = agg[{d.src, d.dst}];
    volume += d.volume_mbps;
    bound = std::max(bound, d.delay_bound_ms);
  }
  std::vector<TrafficDemand> merged;
  merged.reserve(agg.size());
  int next_id = 0;
  for (const auto& [key, val] : agg) {
    merged.push_back(make_demand(net, next_id++, key.first, key.second,
                                 val.first, TrafficClass::non_realtime,
                                 val.second));
  }
  return merged;
}

}  // namespace mtroute
