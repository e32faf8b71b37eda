#pragma once

#include <optional>
#include <vector>

#include "mtroute/network.hpp"

namespace mtroute {

// Weight per link index. Must be non-negative.
using WeightMap = std::vector<double>;

WeightMap unit_weights(const Network& net);
WeightMap delay_weights(const Network& net);

// Minimum-weight simple path from s to t. Among equal-weight paths the one
// with the lexicographically smallest node-index sequence wins, which equals
// node-id order because nodes are sorted by id. Returns nullopt when t is
// unreachable; s == t yields the empty path.
std::optional<Path> shortest_path(const Network& net, const WeightMap& weights,
                                  int s, int t);

// Minimum-weight loop-free path from s to t that passes through via.
// Concatenates the two shortest segments; when they touch, falls back to an
// exhaustive two-segment search over node-disjoint segment pairs.
std::optional<Path> shortest_path_via(const Network& net, const WeightMap& weights,
                                      int s, int via, int t);

}  // namespace mtroute
