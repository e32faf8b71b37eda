#include "mtroute/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "mtroute/lp.hpp"

namespace mtroute {

namespace {

constexpr double kSupportEps = 1e-12;

struct Commodity {
  int src;
  int dst;
  double rate;
};

// Aggregates demands by endpoint pair; order is (src, dst) ascending so the
// LP layout, and with it the solver path, is deterministic.
std::vector<Commodity> aggregate(std::span<const TrafficDemand> demands) {
  std::map<std::pair<int, int>, double> by_pair;
  for (const TrafficDemand& d : demands) {
    by_pair[{d.src, d.dst}] += d.volume_mbps;
  }
  std::vector<Commodity> out;
  out.reserve(by_pair.size());
  for (const auto& [key, rate] : by_pair) {
    out.push_back({key.first, key.second, rate});
  }
  return out;
}

// var_of[c][l] is the LP column of commodity c on link l, or -1 when the
// column is pruned. Links into the commodity source or out of its
// destination only ever carry removable cycles, so they are dropped.
std::vector<std::vector<int>> layout_columns(const Network& net,
                                             std::span<const Commodity> cs,
                                             lp::LpProblem& prob) {
  std::vector<std::vector<int>> var_of(cs.size());
  for (size_t c = 0; c < cs.size(); ++c) {
    var_of[c].assign(net.links().size(), -1);
    for (size_t l = 0; l < net.links().size(); ++l) {
      const Link& link = net.links()[l];
      if (link.dst == cs[c].src || link.src == cs[c].dst) continue;
      var_of[c][l] = prob.add_variable(0.0);
    }
  }
  return var_of;
}

void add_conservation(const Network& net, std::span<const Commodity> cs,
                      const std::vector<std::vector<int>>& var_of,
                      lp::LpProblem& prob) {
  for (size_t c = 0; c < cs.size(); ++c) {
    for (size_t v = 0; v < net.nodes().size(); ++v) {
      const int node = static_cast<int>(v);
      if (node == cs[c].dst) continue;  // implied by the remaining rows
      std::vector<std::pair<int, double>> terms;
      for (int l : net.out_links(node)) {
        if (var_of[c][static_cast<size_t>(l)] >= 0)
          terms.emplace_back(var_of[c][static_cast<size_t>(l)], 1.0);
      }
      for (int l : net.in_links(node)) {
        if (var_of[c][static_cast<size_t>(l)] >= 0)
          terms.emplace_back(var_of[c][static_cast<size_t>(l)], -1.0);
      }
      prob.add_eq(std::move(terms), node == cs[c].src ? 1.0 : 0.0);
    }
  }
}

// Removes directed cycles from one commodity's fraction vector. Canceling a
// circulation keeps every node's net flow unchanged and only lowers link
// loads, so the solution can only improve. Afterwards the support is acyclic
// and every fraction is at most 1.
void cancel_cycles(const Network& net, std::vector<double>& f) {
  const int n = static_cast<int>(net.nodes().size());
  while (true) {
    // Iterative DFS over the positive-support graph looking for a back edge.
    std::vector<int> color(static_cast<size_t>(n), 0);  // 0 new 1 open 2 done
    std::vector<int> via_link(static_cast<size_t>(n), -1);
    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::vector<int> cycle;
    for (int start = 0; start < n && cycle.empty(); ++start) {
      if (color[static_cast<size_t>(start)] != 0) continue;
      std::vector<std::pair<int, size_t>> stack{{start, 0}};
      color[static_cast<size_t>(start)] = 1;
      while (!stack.empty() && cycle.empty()) {
        auto& [node, next] = stack.back();
        const auto out = net.out_links(node);
        bool descended = false;
        while (next < out.size()) {
          const int l = out[next++];
          if (f[static_cast<size_t>(l)] <= kSupportEps) continue;
          const int head = net.links()[static_cast<size_t>(l)].dst;
          if (color[static_cast<size_t>(head)] == 1) {
            // Back edge: walk parents from `node` up to `head`.
            cycle.push_back(l);
            for (int v = node; v != head; v = parent[static_cast<size_t>(v)])
              cycle.push_back(via_link[static_cast<size_t>(v)]);
            break;
          }
          if (color[static_cast<size_t>(head)] == 0) {
            color[static_cast<size_t>(head)] = 1;
            parent[static_cast<size_t>(head)] = node;
            via_link[static_cast<size_t>(head)] = l;
            stack.emplace_back(head, 0);
            descended = true;
            break;
          }
        }
        if (!cycle.empty()) break;
        if (!descended && next >= out.size()) {
          color[static_cast<size_t>(node)] = 2;
          stack.pop_back();
        }
      }
    }
    if (cycle.empty()) return;
    double delta = std::numeric_limits<double>::infinity();
    for (int l : cycle) delta = std::min(delta, f[static_cast<size_t>(l)]);
    for (int l : cycle) {
      double& v = f[static_cast<size_t>(l)];
      v -= delta;
      if (v < kSupportEps) v = 0.0;
    }
  }
}

}  // namespace

std::string to_string(OptimalStatus s) {
  switch (s) {
    case OptimalStatus::ok: return "ok";
    case OptimalStatus::infeasible_capacity: return "infeasible_capacity";
    case OptimalStatus::solver_failure: return "solver_failure";
  }
  return "solver_failure";
}

OptimalSolution solve_optimal(const Network& net,
                              std::span<const TrafficDemand> demands) {
  OptimalSolution sol;
  const size_t nl = net.links().size();
  const std::vector<Commodity> cs = aggregate(demands);

  // Phase A: maximize the worst-case residual z. z is free (split into
  // z+ - z-); a negative optimum is the capacity-shortfall diagnostic, so no
  // hard f <= C rows are added here.
  lp::LpProblem p1;
  const auto var1 = layout_columns(net, cs, p1);
  const int zp = p1.add_variable(1.0);
  const int zm = p1.add_variable(-1.0);
  add_conservation(net, cs, var1, p1);
  for (size_t l = 0; l < nl; ++l) {
    std::vector<std::pair<int, double>> terms;
    for (size_t c = 0; c < cs.size(); ++c) {
      if (var1[c][l] >= 0 && cs[c].rate > 0.0)
        terms.emplace_back(var1[c][l], cs[c].rate);
    }
    terms.emplace_back(zp, 1.0);
    terms.emplace_back(zm, -1.0);
    p1.add_le(std::move(terms), net.links()[l].capacity_mbps);
  }
  const lp::LpSolution s1 = p1.maximize();
  sol.iterations = s1.iterations;
  if (s1.status == lp::LpStatus::infeasible) {
    sol.status = OptimalStatus::solver_failure;
    sol.message = "no admissible routing: some endpoint pair is disconnected";
    return sol;
  }
  if (s1.status != lp::LpStatus::optimal) {
    sol.status = OptimalStatus::solver_failure;
    sol.message = s1.status == lp::LpStatus::iteration_limit
                      ? "simplex iteration limit reached"
                      : "unbounded relaxation: network has no links";
    return sol;
  }
  const double z1 = s1.objective;

  // Phase B: keep z at its optimum and minimize the maximum normalized
  // utilization, which picks the balanced point of the optimal face.
  lp::LpProblem p2;
  const auto var2 = layout_columns(net, cs, p2);
  const int u = p2.add_variable(-1.0);
  add_conservation(net, cs, var2, p2);
  for (size_t l = 0; l < nl; ++l) {
    std::vector<std::pair<int, double>> load_terms;
    for (size_t c = 0; c < cs.size(); ++c) {
      if (var2[c][l] >= 0 && cs[c].rate > 0.0)
        load_terms.emplace_back(var2[c][l], cs[c].rate);
    }
    std::vector<std::pair<int, double>> face = load_terms;
    p2.add_le(std::move(face), net.links()[l].capacity_mbps - z1 + 1e-9);
    load_terms.emplace_back(u, -net.links()[l].capacity_mbps);
    p2.add_le(std::move(load_terms), 0.0);
  }
  const lp::LpSolution s2 = p2.maximize();
  sol.iterations += s2.iterations;

  const lp::LpSolution& best = s2.status == lp::LpStatus::optimal ? s2 : s1;
  const auto& var = s2.status == lp::LpStatus::optimal ? var2 : var1;
  if (s2.status != lp::LpStatus::optimal)
    sol.message = "balance refinement skipped: second solve " +
                  std::string(s2.status == lp::LpStatus::iteration_limit
                                  ? "hit the iteration limit"
                                  : "failed");

  sol.commodities.reserve(cs.size());
  sol.loads = zero_loads(net);
  for (size_t c = 0; c < cs.size(); ++c) {
    CommodityFlow cf;
    cf.src = cs[c].src;
    cf.dst = cs[c].dst;
    cf.rate_mbps = cs[c].rate;
    cf.fraction.assign(nl, 0.0);
    for (size_t l = 0; l < nl; ++l) {
      if (var[c][l] >= 0) {
        const double v = best.x[static_cast<size_t>(var[c][l])];
        cf.fraction[l] = v < kSupportEps ? 0.0 : v;
      }
    }
    cancel_cycles(net, cf.fraction);
    for (size_t l = 0; l < nl; ++l) sol.loads[l] += cf.rate_mbps * cf.fraction[l];
    sol.commodities.push_back(std::move(cf));
  }

  sol.z_star = std::numeric_limits<double>::infinity();
  sol.max_utilization = 0.0;
  for (size_t l = 0; l < nl; ++l) {
    const Link& link = net.links()[l];
    sol.z_star = std::min(sol.z_star, link.capacity_mbps - sol.loads[l]);
    sol.max_utilization =
        std::max(sol.max_utilization, sol.loads[l] / link.capacity_mbps);
  }
  if (nl == 0) sol.z_star = 0.0;

  if (sol.z_star < -1e-9) {
    sol.status = OptimalStatus::infeasible_capacity;
    sol.message = "demand exceeds capacity: worst-case residual is negative";
  } else {
    sol.status = OptimalStatus::ok;
  }
  return sol;
}

OptimalCheck verify_optimal(const Network& net, const OptimalSolution& sol,
                            double tol) {
  OptimalCheck chk;
  const size_t nl = net.links().size();
  auto fail = [&chk](double viol, std::string what) {
    chk.max_violation = std::max(chk.max_violation, viol);
    if (chk.detail.empty()) chk.detail = std::move(what);
  };

  LinkLoadMap loads = zero_loads(net);
  for (const CommodityFlow& cf : sol.commodities) {
    if (cf.fraction.size() != nl) {
      fail(1.0, "fraction vector size mismatch");
      return chk;
    }
    for (size_t v = 0; v < net.nodes().size(); ++v) {
      const int node = static_cast<int>(v);
      double net_out = 0.0;
      for (int l : net.out_links(node)) net_out += cf.fraction[static_cast<size_t>(l)];
      for (int l : net.in_links(node)) net_out -= cf.fraction[static_cast<size_t>(l)];
      const double want = node == cf.src ? 1.0 : node == cf.dst ? -1.0 : 0.0;
      const double viol = std::abs(net_out - want);
      if (viol > tol)
        fail(viol, "conservation violated at node " + net.nodes()[v].id);
    }
    for (size_t l = 0; l < nl; ++l) {
      const double f = cf.fraction[l];
      if (f < -tol || f > 1.0 + tol)
        fail(std::max(-f, f - 1.0), "fraction outside [0,1]");
      loads[l] += cf.rate_mbps * f;
    }
  }
  double z = std::numeric_limits<double>::infinity();
  double util = 0.0;
  for (size_t l = 0; l < nl; ++l) {
    const double viol = std::abs(loads[l] - sol.loads[l]);
    if (viol > tol) fail(viol, "reported load inconsistent with fractions");
    z = std::min(z, net.links()[l].capacity_mbps - loads[l]);
    util = std::max(util, loads[l] / net.links()[l].capacity_mbps);
  }
  if (nl == 0) z = 0.0;
  if (std::abs(z - sol.z_star) > tol)
    fail(std::abs(z - sol.z_star), "z_star inconsistent with loads");
  if (std::abs(util - sol.max_utilization) > tol)
    fail(std::abs(util - sol.max_utilization),
         "max utilization inconsistent with loads");
  if (sol.status == OptimalStatus::ok && z < -tol)
    fail(-z, "status ok but residual negative");
  chk.ok = chk.detail.empty();
  return chk;
}

}  // namespace mtroute
