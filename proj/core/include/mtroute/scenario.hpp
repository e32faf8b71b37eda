#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mtroute/flow.hpp"
#include "mtroute/network.hpp"

namespace mtroute {

// Evaluation scenario: a three-cell LTE-style access network behind one
// packet gateway, with per-user daily volume spread over 48 half-hour
// intervals by a diurnal profile.
struct ScenarioConfig {
  double backhaul_capacity_mbps = 40.0;
  double wireless_capacity_mbps = 20.0;
  int link_delay_ms = 1;

  double per_user_daily_mb = 170.0;          // downlink + uplink per user
  double uplink_fraction_of_downlink = 0.3;  // uplink volume / downlink volume
  double realtime_share = 0.4;  // share of volume bound by the tight SLA
  int d_realtime_ms = 4;
  int d_nonrealtime_ms = 10;

  // Cell 2 is the hot center cell.
  std::array<int, 3> users_per_cell{300, 450, 300};

  // 48 half-hour weights starting at 00:00, summing to 1. Weight lookups
  // normalize by the actual sum, so programmatic configs only need a shape.
  std::vector<double> diurnal_profile;

  // Closed interval range to evaluate; indices wrap modulo 48.
  int first_interval = 16;
  int last_interval = 48;

  std::string gateway_id = "pgw";
  std::string anchor_id = "cr";  // central router used by delay routing
};

ScenarioConfig default_scenario();

// Fixed 16-node reference layout: the gateway feeds a central router plus
// two regional routers; the central router reaches every eNB directly while
// the regional ones go through aggregation routers; eNBs form a wireless
// triangle and each cell hosts two wireless relays.
Network build_reference_network(const ScenarioConfig& cfg);

// A point where user traffic enters or leaves the access network.
struct AttachmentPoint {
  int node = -1;
  int users = 0;
};

// Per cell, half the users attach at the eNB and the rest split across the
// cell's relays (floor first, remainder on the last relay).
std::vector<AttachmentPoint> attachment_points(const Network& net,
                                               const ScenarioConfig& cfg);

// Normalized profile weight for an interval (index taken modulo 48).
double interval_weight(const ScenarioConfig& cfg, int interval);

// Demands of one interval: for every attachment point a downlink and an
// uplink pair (gateway <-> point), each split into a realtime and a
// non-realtime demand by `realtime_share`. Ids number demands in emission
// order. Throws NetworkError when the config references unknown nodes or
// holds malformed values.
std::vector<TrafficDemand> interval_demands(const Network& net,
                                            const ScenarioConfig& cfg,
                                            int interval,
                                            double realtime_share);

// Sum of volumes by (src, dst) ignoring the class split; used by routing
// schemes that do not differentiate traffic classes.
std::vector<TrafficDemand> merge_classes(const Network& net,
                                         std::span<const TrafficDemand> demands);

}  // namespace mtroute
