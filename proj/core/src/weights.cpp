#include "mtroute/weights.hpp"

#include <algorithm>

namespace mtroute {

WeightMap weights_dmetric(const Network& net) {
  WeightMap w(static_cast<size_t>(net.link_count()), 1.0);
  for (int l = 0; l < net.link_count(); ++l) {
    NodeKind a = net.node(net.link(l).src).kind;
    NodeKind b = net.node(net.link(l).dst).kind;
    if (a == NodeKind::enb && b == NodeKind::enb) {
      w[l] = 10.0;
    } else if (a == NodeKind::relay && b == NodeKind::relay) {
      w[l] = 100.0;
    }
  }
  return w;
}

WeightMap weights_invcap(const Network& net) {
  if (net.link_count() == 0) return {};
  double w0 = 0.0;
  for (const Link& l : net.links()) w0 = std::max(w0, l.capacity_mbps);
  WeightMap w(static_cast<size_t>(net.link_count()));
  for (int l = 0; l < net.link_count(); ++l) {
    w[l] = w0 / net.link(l).capacity_mbps;
  }
  return w;
}

}  // namespace mtroute
