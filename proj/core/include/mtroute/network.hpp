#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtroute {

enum class NodeKind { router, gateway, enb, relay };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view s);

struct Node {
  std::string id;
  NodeKind kind;
};

// Directed link between two node indices. Bidirectional physical links are
// modeled as two independent directed links.
struct Link {
  int src = -1;
  int dst = -1;
  double capacity_mbps = 0.0;
  int delay_ms = 0;
};

struct LinkSpec {
  std::string src;
  std::string dst;
  double capacity_mbps = 0.0;
  int delay_ms = 0;
};

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable directed graph. Nodes are sorted by id and links by (src, dst)
// index at construction, so index order doubles as the deterministic
// lexicographic order used for tie-breaking.
class Network {
 public:
  // Validates and normalizes the parts. Throws NetworkError on duplicate ids,
  // unknown endpoints, self-loops, duplicate (src, dst) pairs, non-positive
  // capacity, or non-positive delay.
  static Network build(std::vector<Node> nodes, const std::vector<LinkSpec>& links);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }

  const Node& node(int i) const { return nodes_[i]; }
  const Link& link(int i) const { return links_[i]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  std::optional<int> node_index(std::string_view id) const;
  std::optional<int> link_index(int src, int dst) const;

  // Link indices ordered by peer node index.
  std::span<const int> out_links(int node) const;
  std::span<const int> in_links(int node) const;
  int out_degree(int node) const { return static_cast<int>(out_links(node).size()); }

  const std::string& node_id(int i) const { return nodes_[i].id; }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Simple directed path stored as consecutive link indices. The delay is
// cached at construction and always equals the sum of link delays.
class Path {
 public:
  Path() = default;

  // Validates that the links form a chain without repeated nodes.
  // Throws NetworkError otherwise.
  static Path of_links(const Network& net, std::vector<int> links);

  const std::vector<int>& links() const { return links_; }
  int delay_ms() const { return delay_ms_; }
  bool empty() const { return links_.empty(); }
  int size() const { return static_cast<int>(links_.size()); }

  int src(const Network& net) const;
  int dst(const Network& net) const;

  // Node indices from source to destination; empty path yields {}.
  std::vector<int> node_sequence(const Network& net) const;

  friend bool operator==(const Path& a, const Path& b) { return a.links_ == b.links_; }

 private:
  std::vector<int> links_;
  int delay_ms_ = 0;
};

// Recomputes the delay from the link delays (the cached value must match).
int path_delay(const Network& net, const Path& path);

// Load per link index, Mbps. Zero-initialized to link_count entries.
using LinkLoadMap = std::vector<double>;

LinkLoadMap zero_loads(const Network& net);

// Per-link residual capacity (capacity - load).
std::vector<double> residual(const Network& net, const LinkLoadMap& loads);

}  // namespace mtroute
