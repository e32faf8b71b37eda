#pragma once

#include <span>
#include <string>

#include "mtroute/network.hpp"

namespace mtroute {

// Logarithmic opinion-score model over the per-flow bitrate X in Kbps:
// score = beta + gamma * ln(X - alpha), clamped to [1, 5]; X <= alpha maps
// to the floor score 1.
struct MosModel {
  double alpha = 4.091;
  double beta = 1.515;
  double gamma = 1.0;
};

double mos(const MosModel& model, double x_kbps);

// Maximum link utilization (load / capacity); 0 for an empty link set.
double mlu(const Network& net, const LinkLoadMap& loads);

// Minimal residual capacity ratio, the complement of the maximum
// utilization: mrc = 1 - mlu.
double mrc(const Network& net, const LinkLoadMap& loads);

double link_utilization(const Network& net, const LinkLoadMap& loads, int link);

// Smallest free-capacity share along the links, clamped at 0 when a link is
// overloaded. An empty set yields 1 (nothing constrains the flow).
double availability(const Network& net, const LinkLoadMap& loads,
                    std::span<const int> links);

// Smallest capacity along the links; 0 for an empty set.
double bottleneck_capacity_mbps(const Network& net, std::span<const int> links);

// Fair-share bitrate of one of n_flows concurrent flows: the free share of
// the path times its bottleneck capacity, evenly divided. Kbps. Throws
// NetworkError when n_flows < 1.
double per_flow_bitrate_kbps(double path_fraction,
                             double bottleneck_capacity_mbps, int n_flows);

// Same, reading the fraction and bottleneck off a link set under loads.
double per_flow_bitrate_kbps(const Network& net, const LinkLoadMap& loads,
                             std::span<const int> links, int n_flows);

// Ratio of an algorithm's residual-capacity score to the optimum's. Values
// beyond 1 + 1e-6 indicate an inconsistency and are capped and flagged; a
// non-positive optimum leaves the ratio undefined.
struct PerfRatio {
  enum class Status { ok, capped, undefined };
  double value = 0.0;
  Status status = Status::undefined;
};

PerfRatio perf_ratio(double algorithm_mrc, double optimal_mrc);

std::string to_string(PerfRatio::Status s);

// One evaluated interval of one algorithm, as written to the report table.
struct IntervalReport {
  int interval = 0;
  std::string algorithm;
  double mrc = 0.0;
  double mlu = 0.0;
  PerfRatio perf;
  double mos_min = 0.0;
  double mos_max = 0.0;
  int rejections = 0;
};

}  // namespace mtroute
