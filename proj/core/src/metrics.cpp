#include "mtroute/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mtroute {

double mos(const MosModel& model, double x_kbps) {
  if (!(x_kbps > model.alpha)) return 1.0;
  const double raw = model.beta + model.gamma * std::log(x_kbps - model.alpha);
  return std::clamp(raw, 1.0, 5.0);
}

double mlu(const Network& net, const LinkLoadMap& loads) {
  double worst = 0.0;
  for (int l = 0; l < net.link_count(); ++l)
    worst = std::max(worst, link_utilization(net, loads, l));
  return worst;
}

double mrc(const Network& net, const LinkLoadMap& loads) {
  return 1.0 - mlu(net, loads);
}

double link_utilization(const Network& net, const LinkLoadMap& loads, int link) {
  return loads[static_cast<size_t>(link)] / net.link(link).capacity_mbps;
}

double availability(const Network& net, const LinkLoadMap& loads,
                    std::span<const int> links) {
  double avail = 1.0;
  for (int l : links)
    avail = std::min(avail, 1.0 - link_utilization(net, loads, l));
  return std::max(avail, 0.0);
}

double bottleneck_capacity_mbps(const Network& net, std::span<const int> links) {
  if (links.empty()) return 0.0;
  double cap = std::numeric_limits<double>::infinity();
  for (int l : links) cap = std::min(cap, net.link(l).capacity_mbps);
  return cap;
}

double per_flow_bitrate_kbps(double path_fraction,
                             double bottleneck_capacity_mbps, int n_flows) {
  if (n_flows < 1) throw NetworkError("per-flow bitrate needs n_flows >= 1");
  return path_fraction * bottleneck_capacity_mbps * 1000.0 / n_flows;
}

double per_flow_bitrate_kbps(const Network& net, const LinkLoadMap& loads,
                             std::span<const int> links, int n_flows) {
  if (links.empty()) return 0.0;
  return per_flow_bitrate_kbps(availability(net, loads, links),
                               bottleneck_capacity_mbps(net, links), n_flows);
}

PerfRatio perf_ratio(double algorithm_mrc, double optimal_mrc) {
  PerfRatio r;
  if (!(optimal_mrc > 0.0)) {
    r.status = PerfRatio::Status::undefined;
    r.value = 0.0;
    return r;
  }
  const double ratio = algorithm_mrc / optimal_mrc;
  if (ratio > 1.0 + 1e-6) {
    r.status = PerfRatio::Status::capped;
    r.value = 1.0;
  } else {
    r.status = PerfRatio::Status::ok;
    r.value = std::min(ratio, 1.0);
  }
  return r;
}

std::string to_string(PerfRatio::Status s) {
  switch (s) {
    case PerfRatio::Status::ok: return "ok";
    case PerfRatio::Status::capped: return "capped";
    case PerfRatio::Status::undefined: return "undefined";
  }
  return "undefined";
}

}  // namespace mtroute
