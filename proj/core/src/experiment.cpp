#include "mtroute/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>
#include <utility>

#include <json.hpp>

#include "mtroute/json_io.hpp"
#include "mtroute/weights.hpp"

namespace mtroute {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::map<int, int> users_by_node(const Network& net, const ScenarioConfig& cfg) {
  std::map<int, int> users;
  for (const AttachmentPoint& pt : attachment_points(net, cfg))
    users[pt.node] = pt.users;
  return users;
}

int flows_for(const std::map<int, int>& users, const TrafficDemand& d) {
  const auto pick = [&users](int node) -> std::optional<int> {
    const auto it = users.find(node);
    if (it == users.end()) return std::nullopt;
    return it->second;
  };
  const std::optional<int> n = pick(d.dst) ? pick(d.dst) : pick(d.src);
  return std::max(1, n.value_or(1));
}

void add_routed_entries(const std::map<int, int>& users,
                        std::span<const RoutedDemand> routed,
                        AlgorithmEvaluation& ev) {
  for (const RoutedDemand& r : routed) {
    ev.entries.push_back({r.demand, r.path.links(), flows_for(users, r.demand)});
  }
}

int anchor_node(const Network& net, const ScenarioConfig& cfg) {
  const auto idx = net.node_index(cfg.anchor_id);
  if (!idx) throw NetworkError("anchor node '" + cfg.anchor_id + "' not found");
  return *idx;
}

// The hottest cell's eNB, the natural probe point for the MOS series.
int center_enb(const Network& net, const ScenarioConfig& cfg) {
  size_t hot = 0;
  for (size_t i = 1; i < cfg.users_per_cell.size(); ++i)
    if (cfg.users_per_cell[i] > cfg.users_per_cell[hot]) hot = i;
  const std::string id = "enb" + std::to_string(hot + 1);
  const auto idx = net.node_index(id);
  if (!idx) throw NetworkError("probe eNB '" + id + "' not found");
  return *idx;
}

}  // namespace

std::optional<AlgorithmSpec> parse_algorithm(const std::string& token) {
  if (token == "DMetric") return AlgorithmSpec{token, AlgorithmKind::dmetric, 0.0};
  if (token == "InvCap") return AlgorithmSpec{token, AlgorithmKind::invcap, 0.0};
  if (token == "Optimal") return AlgorithmSpec{token, AlgorithmKind::optimal, 0.0};
  constexpr std::string_view prefix = "MDelay-";
  if (token.size() > prefix.size() && token.starts_with(prefix)) {
    int share = 0;
    for (size_t i = prefix.size(); i < token.size(); ++i) {
      if (token[i] < '0' || token[i] > '9') return std::nullopt;
      share = share * 10 + (token[i] - '0');
      if (share > 99) return std::nullopt;
    }
    if (share < 1) return std::nullopt;
    return AlgorithmSpec{token, AlgorithmKind::mdelay, share / 100.0};
  }
  return std::nullopt;
}

int scenario_horizon_ms(const ScenarioConfig& cfg) {
  return std::max(cfg.d_realtime_ms, cfg.d_nonrealtime_ms) + 1;
}

TopologyCatalog scenario_catalog(const Network& net, const ScenarioConfig& cfg) {
  const auto demands =
      interval_demands(net, cfg, cfg.first_interval, cfg.realtime_share);
  return discover_catalog(net, scenario_horizon_ms(cfg), demands);
}

std::vector<AlgorithmEvaluation> evaluate_interval(
    const Network& net, const ScenarioConfig& cfg, int interval,
    std::span<const AlgorithmSpec> specs, const TopologyCatalog& catalog) {
  const std::map<int, int> users = users_by_node(net, cfg);
  const auto demands_base =
      interval_demands(net, cfg, interval, cfg.realtime_share);

  std::vector<AlgorithmEvaluation> evals;
  evals.reserve(specs.size());
  for (const AlgorithmSpec& spec : specs) {
    AlgorithmEvaluation ev;
    ev.spec = spec;
    ev.loads = zero_loads(net);
    switch (spec.kind) {
      case AlgorithmKind::dmetric:
      case AlgorithmKind::invcap: {
        const WeightMap w = spec.kind == AlgorithmKind::dmetric
                                ? weights_dmetric(net)
                                : weights_invcap(net);
        ShortestRouteReport rep = route_shortest(net, w, demands_base);
        ev.loads = std::move(rep.assignment.loads);
        ev.rejections = static_cast<int>(rep.unreachable.size());
        add_routed_entries(users, rep.assignment.routed, ev);
        break;
      }
      case AlgorithmKind::mdelay: {
        const auto demands =
            interval_demands(net, cfg, interval, spec.realtime_share);
        MdelayReport rep =
            route_mdelay(net, catalog, demands, anchor_node(net, cfg));
        ev.loads = std::move(rep.assignment.loads);
        ev.rejections = static_cast<int>(rep.rejected.size());
        ev.trace = std::move(rep.trace);
        add_routed_entries(users, rep.assignment.routed, ev);
        break;
      }
      case AlgorithmKind::optimal: {
        OptimalSolution sol = solve_optimal(net, demands_base);
        if (sol.status == OptimalStatus::solver_failure) {
          ev.errors.push_back(sol.message);
        } else {
          ev.loads = sol.loads;
          int next_id = 0;
          for (const CommodityFlow& c : sol.commodities) {
            RoutedEntry entry;
            entry.demand = TrafficDemand{next_id++, c.src, c.dst, c.rate_mbps,
                                         TrafficClass::non_realtime,
                                         cfg.d_nonrealtime_ms};
            for (size_t l = 0; l < c.fraction.size(); ++l)
              if (c.fraction[l] > 0.0) entry.links.push_back(static_cast<int>(l));
            entry.n_flows = flows_for(users, entry.demand);
            ev.entries.push_back(std::move(entry));
          }
        }
        ev.optimal = std::move(sol);
        break;
      }
    }
    evals.push_back(std::move(ev));
  }
  return evals;
}

IntervalReport make_report(const Network& net, int interval,
                           const AlgorithmEvaluation& eval,
                           std::optional<double> optimal_mrc) {
  IntervalReport rep;
  rep.interval = interval;
  rep.algorithm = eval.spec.token;
  rep.rejections = eval.rejections;
  if (!eval.errors.empty()) {
    rep.mrc = rep.mlu = rep.mos_min = rep.mos_max = kNan;
    rep.perf.status = PerfRatio::Status::undefined;
    rep.perf.value = kNan;
    return rep;
  }
  rep.mlu = mlu(net, eval.loads);
  rep.mrc = 1.0 - rep.mlu;
  if (optimal_mrc) {
    rep.perf = perf_ratio(rep.mrc, *optimal_mrc);
  } else {
    rep.perf.status = PerfRatio::Status::undefined;
    rep.perf.value = kNan;
  }
  if (eval.entries.empty()) {
    rep.mos_min = rep.mos_max = 1.0;  // nothing served
    return rep;
  }
  const MosModel model;
  rep.mos_min = 5.0;
  rep.mos_max = 1.0;
  for (const RoutedEntry& e : eval.entries) {
    const double score = mos(
        model, per_flow_bitrate_kbps(net, eval.loads, e.links, e.n_flows));
    rep.mos_min = std::min(rep.mos_min, score);
    rep.mos_max = std::max(rep.mos_max, score);
  }
  return rep;
}

namespace {

std::optional<double> optimal_mrc_of(const Network& net,
                                     std::span<const AlgorithmEvaluation> evals) {
  for (const AlgorithmEvaluation& ev : evals) {
    if (ev.spec.kind == AlgorithmKind::optimal && ev.errors.empty())
      return mrc(net, ev.loads);
  }
  return std::nullopt;
}

std::string report_csv(std::span<const IntervalReport> reports) {
  std::string out =
      "interval,algorithm,mrc,mlu,perf_ratio,mos_min,mos_max,rejections\n";
  for (const IntervalReport& r : reports) {
    const double perf =
        r.perf.status == PerfRatio::Status::undefined ? kNan : r.perf.value;
    out += std::to_string(r.interval) + "," + r.algorithm + "," + fmt6(r.mrc) +
           "," + fmt6(r.mlu) + "," + fmt6(perf) + "," + fmt6(r.mos_min) + "," +
           fmt6(r.mos_max) + "," + std::to_string(r.rejections) + "\n";
  }
  return out;
}

std::string demands_csv(const Network& net,
                        std::span<const std::pair<int, TrafficDemand>> rows) {
  std::string out = "interval,src,dst,class,mbps,d_tau_ms\n";
  for (const auto& [interval, d] : rows) {
    out += std::to_string(interval) + "," + net.node_id(d.src) + "," +
           net.node_id(d.dst) + "," + std::string(to_string(d.cls)) + "," +
           fmt6(d.volume_mbps) + "," + std::to_string(d.delay_bound_ms) + "\n";
  }
  return out;
}

std::string trace_csv(const Network& net,
                      std::span<const SelectionTraceRow> rows) {
  std::string out =
      "demand_id,s,t,class,d_tau_ms,chosen_k,path_delay_ms,gamma,status\n";
  for (const SelectionTraceRow& r : rows) {
    out += std::to_string(r.demand.id) + "," + net.node_id(r.demand.src) + "," +
           net.node_id(r.demand.dst) + "," +
           std::string(to_string(r.demand.cls)) + "," +
           std::to_string(r.demand.delay_bound_ms) + "," +
           std::to_string(r.chosen_k) + "," + std::to_string(r.path_delay_ms) +
           "," + fmt6(r.gamma) + "," + r.status + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& files) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw NetworkError("cannot write " + path);
  f << content;
  files.push_back(path);
}

int find_busy_interval(const ScenarioConfig& cfg) {
  int busy = cfg.first_interval;
  double best = -1.0;
  for (int i = cfg.first_interval; i <= cfg.last_interval; ++i) {
    const double w = interval_weight(cfg, i);
    if (w > best) {
      best = w;
      busy = i;
    }
  }
  return busy;
}

// Per-algorithm perf-ratio series, each column independently sorted
// ascending (missing ratios sort last and print as nan).
std::string perf_sorted_dat(std::span<const AlgorithmSpec> specs,
                            std::span<const IntervalReport> reports) {
  std::string out = "# rank";
  std::vector<std::vector<double>> cols(specs.size());
  for (size_t a = 0; a < specs.size(); ++a) {
    out += " " + specs[a].token;
    for (const IntervalReport& r : reports) {
      if (r.algorithm != specs[a].token) continue;
      cols[a].push_back(r.perf.status == PerfRatio::Status::undefined
                            ? kNan
                            : r.perf.value);
    }
    std::sort(cols[a].begin(), cols[a].end(), [](double x, double y) {
      if (std::isnan(x)) return false;
      if (std::isnan(y)) return true;
      return x < y;
    });
  }
  out += "\n";
  const size_t rows = cols.empty() ? 0 : cols[0].size();
  for (size_t i = 0; i < rows; ++i) {
    out += std::to_string(i + 1);
    for (const auto& col : cols) out += " " + fmt6(col[i]);
    out += "\n";
  }
  return out;
}

// MOS against concurrent flow count on the hot cell's downlink path under
// each algorithm's busy-interval loads.
std::string mos_vs_flows_dat(const Network& net, const ScenarioConfig& cfg,
                             std::span<const AlgorithmSpec> specs,
                             std::span<const AlgorithmEvaluation> busy_evals) {
  const auto gw = net.node_index(cfg.gateway_id);
  const int probe = center_enb(net, cfg);
  std::string out = "# n_flows";
  struct Series {
    const LinkLoadMap* loads = nullptr;
    std::vector<int> links;
  };
  std::vector<Series> series(specs.size());
  for (size_t a = 0; a < specs.size(); ++a) {
    out += " " + specs[a].token;
    for (const AlgorithmEvaluation& ev : busy_evals) {
      if (ev.spec.token != specs[a].token) continue;
      series[a].loads = &ev.loads;
      const RoutedEntry* pick = nullptr;
      for (const RoutedEntry& e : ev.entries) {
        if (!gw || e.demand.src != *gw || e.demand.dst != probe) continue;
        if (!pick || (pick->demand.cls != TrafficClass::non_realtime &&
                      e.demand.cls == TrafficClass::non_realtime)) {
          pick = &e;
        }
      }
      if (pick) series[a].links = pick->links;
    }
  }
  out += "\n";
  const MosModel model;
  for (int n = 1; n <= 1000; ++n) {
    out += std::to_string(n);
    for (const Series& s : series) {
      double score = 1.0;
      if (s.loads && !s.links.empty())
        score = mos(model, per_flow_bitrate_kbps(net, *s.loads, s.links, n));
      out += " " + fmt6(score);
    }
    out += "\n";
  }
  return out;
}

std::string summary_json(const ScenarioConfig& cfg,
                         std::span<const AlgorithmSpec> specs,
                         std::span<const IntervalReport> reports,
                         std::span<const std::string> errors, int busy_interval,
                         std::span<const std::string> files) {
  nlohmann::ordered_json j;
  j["algorithms"] = nlohmann::ordered_json::array();
  for (const AlgorithmSpec& s : specs) j["algorithms"].push_back(s.token);
  j["interval_range"] =
      nlohmann::ordered_json::array({cfg.first_interval, cfg.last_interval});
  j["busy_interval"] = busy_interval;
  j["per_algorithm"] = nlohmann::ordered_json::object();
  for (const AlgorithmSpec& s : specs) {
    double mrc_sum = 0.0, mrc_min = 1.0, mlu_max = 0.0, perf_sum = 0.0;
    int count = 0, perf_count = 0, rejections = 0;
    for (const IntervalReport& r : reports) {
      if (r.algorithm != s.token || std::isnan(r.mrc)) continue;
      ++count;
      mrc_sum += r.mrc;
      mrc_min = std::min(mrc_min, r.mrc);
      mlu_max = std::max(mlu_max, r.mlu);
      rejections += r.rejections;
      if (r.perf.status != PerfRatio::Status::undefined) {
        perf_sum += r.perf.value;
        ++perf_count;
      }
    }
    nlohmann::ordered_json ja;
    ja["intervals"] = count;
    ja["mean_mrc"] = count ? mrc_sum / count : 0.0;
    ja["min_mrc"] = count ? mrc_min : 0.0;
    ja["max_mlu"] = mlu_max;
    if (perf_count)
      ja["mean_perf_ratio"] = perf_sum / perf_count;
    else
      ja["mean_perf_ratio"] = nullptr;
    ja["rejections_total"] = rejections;
    j["per_algorithm"][s.token] = std::move(ja);
  }
  j["errors"] = nlohmann::ordered_json::array();
  for (const std::string& e : errors) j["errors"].push_back(e);
  j["files"] = nlohmann::ordered_json::array();
  for (const std::string& f : files)
    j["files"].push_back(std::filesystem::path(f).filename().string());
  return j.dump(2) + "\n";
}

void require_algorithms(const RunOptions& opts) {
  if (opts.algorithms.empty())
    throw NetworkError("at least one algorithm must be selected");
}

}  // namespace

RunResult run_experiment(const Network& net, const ScenarioConfig& cfg,
                         const RunOptions& opts) {
  require_algorithms(opts);
  if (cfg.last_interval < cfg.first_interval)
    throw NetworkError("empty interval range");
  std::filesystem::create_directories(opts.out_dir);

  const TopologyCatalog catalog = scenario_catalog(net, cfg);
  const size_t n = static_cast<size_t>(cfg.last_interval - cfg.first_interval + 1);
  std::vector<std::vector<AlgorithmEvaluation>> slots(n);
  std::atomic<size_t> next{0};

  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = std::min<int>(
      opts.workers > 0 ? opts.workers : std::max(1u, hw), static_cast<int>(n));
  auto work = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) {
      const int interval = cfg.first_interval + static_cast<int>(i);
      try {
        slots[i] =
            evaluate_interval(net, cfg, interval, opts.algorithms, catalog);
      } catch (const std::exception& e) {
        std::vector<AlgorithmEvaluation> evals;
        for (const AlgorithmSpec& spec : opts.algorithms) {
          AlgorithmEvaluation ev;
          ev.spec = spec;
          ev.loads = zero_loads(net);
          ev.errors.push_back(e.what());
          evals.push_back(std::move(ev));
        }
        slots[i] = std::move(evals);
      }
    }
  };
  {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  RunResult result;
  result.busy_interval = find_busy_interval(cfg);
  std::vector<std::pair<int, TrafficDemand>> demand_rows;
  for (size_t i = 0; i < n; ++i) {
    const int interval = cfg.first_interval + static_cast<int>(i);
    const auto opt_mrc = optimal_mrc_of(net, slots[i]);
    for (const AlgorithmEvaluation& ev : slots[i]) {
      result.reports.push_back(make_report(net, interval, ev, opt_mrc));
      for (const std::string& e : ev.errors)
        result.errors.push_back("interval " + std::to_string(interval) + " " +
                                ev.spec.token + ": " + e);
    }
    for (const TrafficDemand& d :
         interval_demands(net, cfg, interval, cfg.realtime_share))
      demand_rows.emplace_back(interval, d);
  }

  const auto out = [&opts](const char* name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
  };
  write_file(out("report.csv"), report_csv(result.reports), result.files);
  write_file(out("demands.csv"), demands_csv(net, demand_rows), result.files);
  write_file(out("perf_ratio_sorted.dat"),
             perf_sorted_dat(opts.algorithms, result.reports), result.files);
  const size_t busy_slot =
      static_cast<size_t>(result.busy_interval - cfg.first_interval);
  write_file(out("mos_vs_flows.dat"),
             mos_vs_flows_dat(net, cfg, opts.algorithms, slots[busy_slot]),
             result.files);
  write_file(out("scenario_echo.json"), scenario_to_json(cfg), result.files);
  write_file(out("summary.json"),
             summary_json(cfg, opts.algorithms, result.reports, result.errors,
                          result.busy_interval, result.files),
             result.files);
  return result;
}

RunResult route_interval(const Network& net, const ScenarioConfig& cfg,
                         int interval, const RunOptions& opts) {
  require_algorithms(opts);
  std::filesystem::create_directories(opts.out_dir);
  const TopologyCatalog catalog = scenario_catalog(net, cfg);
  const auto evals =
      evaluate_interval(net, cfg, interval, opts.algorithms, catalog);

  RunResult result;
  result.busy_interval = interval;
  const auto opt_mrc = optimal_mrc_of(net, evals);
  for (const AlgorithmEvaluation& ev : evals) {
    result.reports.push_back(make_report(net, interval, ev, opt_mrc));
    for (const std::string& e : ev.errors)
      result.errors.push_back(ev.spec.token + ": " + e);
  }

  const auto out = [&opts](const std::string& name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
  };
  write_file(out("report.csv"), report_csv(result.reports), result.files);
  std::vector<std::pair<int, TrafficDemand>> demand_rows;
  for (const TrafficDemand& d :
       interval_demands(net, cfg, interval, cfg.realtime_share))
    demand_rows.emplace_back(interval, d);
  write_file(out("demands.csv"), demands_csv(net, demand_rows), result.files);
  for (const AlgorithmEvaluation& ev : evals) {
    if (ev.spec.kind != AlgorithmKind::mdelay) continue;
    write_file(out("trace_" + ev.spec.token + ".csv"),
               trace_csv(net, ev.trace), result.files);
  }
  return result;
}

}  // namespace mtroute
