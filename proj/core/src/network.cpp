#include "mtroute/network.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mtroute {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::router: return "router";
    case NodeKind::gateway: return "gateway";
    case NodeKind::enb: return "eNB";
    case NodeKind::relay: return "relay";
  }
  return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) {
  if (s == "router") return NodeKind::router;
  if (s == "gateway") return NodeKind::gateway;
  if (s == "eNB" || s == "enb") return NodeKind::enb;
  if (s == "relay") return NodeKind::relay;
  return std::nullopt;
}

Network Network::build(std::vector<Node> nodes, const std::vector<LinkSpec>& links) {
  Network net;
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i + 1].id) {
      throw NetworkError("duplicate node id: " + nodes[i].id);
    }
  }
  net.nodes_ = std::move(nodes);

  std::map<std::string_view, int> index;
  for (int i = 0; i < net.node_count(); ++i) index.emplace(net.nodes_[i].id, i);

  std::vector<Link> resolved;
  resolved.reserve(links.size());
  for (const LinkSpec& spec : links) {
    auto s = index.find(spec.src);
    auto d = index.find(spec.dst);
    if (s == index.end()) throw NetworkError("link endpoint not a node: " + spec.src);
    if (d == index.end()) throw NetworkError("link endpoint not a node: " + spec.dst);
    if (s->second == d->second) {
      throw NetworkError("self-loop link at node: " + spec.src);
    }
    if (!(spec.capacity_mbps > 0.0)) {
      throw NetworkError("link " + spec.src + "->" + spec.dst + " capacity must be > 0");
    }
    if (spec.delay_ms <= 0) {
      throw NetworkError("link " + spec.src + "->" + spec.dst + " delay must be > 0");
    }
    resolved.push_back(Link{s->second, d->second, spec.capacity_mbps, spec.delay_ms});
  }
  std::sort(resolved.begin(), resolved.end(), [](const Link& a, const Link& b) {
    return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
  });
  for (size_t i = 0; i + 1 < resolved.size(); ++i) {
    if (resolved[i].src == resolved[i + 1].src && resolved[i].dst == resolved[i + 1].dst) {
      throw NetworkError("duplicate link: " + net.nodes_[resolved[i].src].id + "->" +
                         net.nodes_[resolved[i].dst].id);
    }
  }
  net.links_ = std::move(resolved);

  net.out_.assign(net.node_count(), {});
  net.in_.assign(net.node_count(), {});
  for (int l = 0; l < net.link_count(); ++l) {
    net.out_[net.links_[l].src].push_back(l);
    net.in_[net.links_[l].dst].push_back(l);
  }
  // out_ is already ordered by dst index because links_ is sorted; order in_
  // by src index for determinism.
  for (auto& v : net.in_) {
    std::sort(v.begin(), v.end(),
              [&](int a, int b) { return net.links_[a].src < net.links_[b].src; });
  }
  return net;
}

std::optional<int> Network::node_index(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, std::string_view v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

std::optional<int> Network::link_index(int src, int dst) const {
  auto key = std::pair(src, dst);
  auto it = std::lower_bound(links_.begin(), links_.end(), key,
                             [](const Link& l, const std::pair<int, int>& k) {
                               return std::pair(l.src, l.dst) < k;
                             });
  if (it == links_.end() || it->src != src || it->dst != dst) return std::nullopt;
  return static_cast<int>(it - links_.begin());
}

std::span<const int> Network::out_links(int node) const {
  return {out_[node].data(), out_[node].size()};
}

std::span<const int> Network::in_links(int node) const {
  return {in_[node].data(), in_[node].size()};
}

Path Path::of_links(const Network& net, std::vector<int> links) {
  Path p;
  if (links.empty()) return p;
  std::set<int> seen;
  int delay = 0;
  for (size_t i = 0; i < links.size(); ++i) {
    int l = links[i];
    if (l < 0 || l >= net.link_count()) throw NetworkError("path link index out of range");
    const Link& link = net.link(l);
    if (i == 0) {
      seen.insert(link.src);
    } else if (net.link(links[i - 1]).dst != link.src) {
      throw NetworkError("path links do not form a chain");
    }
    if (!seen.insert(link.dst).second) {
      throw NetworkError("path repeats a node");
    }
    delay += link.delay_ms;
  }
  p.links_ = std::move(links);
  p.delay_ms_ = delay;
  return p;
}

int Path::src(const Network& net) const {
  if (links_.empty()) throw NetworkError("empty path has no source");
  return net.link(links_.front()).src;
}

int Path::dst(const Network& net) const {
  if (links_.empty()) throw NetworkError("empty path has no destination");
  return net.link(links_.back()).dst;
}

std::vector<int> Path::node_sequence(const Network& net) const {
  std::vector<int> seq;
  if (links_.empty()) return seq;
  seq.push_back(net.link(links_.front()).src);
  for (int l : links_) seq.push_back(net.link(l).dst);
  return seq;
}

int path_delay(const Network& net, const Path& path) {
  int sum = 0;
  for (int l : path.links()) sum += net.link(l).delay_ms;
  return sum;
}

LinkLoadMap zero_loads(const Network& net) {
  return LinkLoadMap(static_cast<size_t>(net.link_count()), 0.0);
}

std::vector<double> residual(const Network& net, const LinkLoadMap& loads) {
  std::vector<double> r(loads.size());
  for (size_t i = 0; i < loads.size(); ++i) {
    r[i] = net.link(static_cast<int>(i)).capacity_mbps - loads[i];
  }
  return r;
}

}  // namespace mtroute
