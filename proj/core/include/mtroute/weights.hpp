#pragma once

#include "mtroute/network.hpp"
#include "mtroute/shortest_path.hpp"

namespace mtroute {

// Static administrative weights: 1 everywhere except 10 on eNB-eNB links and
// 100 on relay-relay links, discouraging wireless mesh detours.
WeightMap weights_dmetric(const Network& net);

// Inverse-capacity weights W0 / c with W0 the largest capacity in the
// network, so the fattest link costs exactly 1.
WeightMap weights_invcap(const Network& net);

}  // namespace mtroute
