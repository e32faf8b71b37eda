#pragma once

#include <span>
#include <string>
#include <vector>

#include "mtroute/flow.hpp"
#include "mtroute/network.hpp"

namespace mtroute {

enum class OptimalStatus { ok, infeasible_capacity, solver_failure };

std::string to_string(OptimalStatus s);

// One aggregated source/destination pair with its routed split. `fraction`
// holds, per link index, the share of the commodity's rate crossing that
// link; it satisfies unit conservation (net outflow 1 at src, -1 at dst,
// 0 elsewhere) and lies in [0, 1] once cycles are canceled.
struct CommodityFlow {
  int src = -1;
  int dst = -1;
  double rate_mbps = 0.0;
  std::vector<double> fraction;
};

struct OptimalSolution {
  OptimalStatus status = OptimalStatus::solver_failure;
  double z_star = 0.0;           // min over links of capacity minus load
  double max_utilization = 0.0;  // max over links of load / capacity
  LinkLoadMap loads;
  std::vector<CommodityFlow> commodities;
  std::string message;  // non-empty when status != ok
  int iterations = 0;   // total simplex pivots across both solves
};

// Splittable-routing optimum: first maximizes the worst-case residual
// capacity z, then, holding z at that optimum, minimizes the maximum
// normalized link utilization so the reported loads are the balanced
// representative of the optimal face. z_star < 0 means demand exceeds
// capacity on every routing; loads are still reported and show the
// unavoidable overload.
OptimalSolution solve_optimal(const Network& net,
                              std::span<const TrafficDemand> demands);

struct OptimalCheck {
  bool ok = false;
  double max_violation = 0.0;
  std::string detail;  // first violated condition, empty when ok
};

// Independent recheck of a reported solution: per-commodity conservation,
// fraction bounds, load consistency, and the z_star / utilization figures.
OptimalCheck verify_optimal(const Network& net, const OptimalSolution& sol,
                            double tol = 1e-6);

}  // namespace mtroute
