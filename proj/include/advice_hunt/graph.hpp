#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace advice_hunt {

using NodeId = std::uint32_t;
using Port = std::uint32_t;
using Label = std::uint64_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Where a port leads: the neighbour and the port number at the neighbour's end.
struct HalfEdge {
  NodeId neighbor = kNoNode;
  Port reciprocal = 0;
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

struct NodeRecord {
  Label label = 0;
  std::vector<HalfEdge> ports;  // indexed by local port number
  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

/// Undirected graph addressed by local port numbers.
///
/// The container itself accepts any adjacency data so that `validate` can
/// report on malformed input; every generator and the file loader only
/// produce graphs for which `validate` is empty.
class PortLabeledGraph {
 public:
  PortLabeledGraph() = default;
  explicit PortLabeledGraph(std::vector<NodeRecord> nodes) : nodes_(std::move(nodes)) {}

  std::size_t node_count() const noexcept { return nodes_.size(); }

  std::size_t edge_count() const noexcept {
    std::size_t half_edges = 0;
    for (const auto& n : nodes_) half_edges += n.ports.size();
    return half_edges / 2;
  }

  std::size_t degree(NodeId v) const { return nodes_.at(v).ports.size(); }
  Label label(NodeId v) const { return nodes_.at(v).label; }
  const HalfEdge& follow(NodeId v, Port p) const { return nodes_.at(v).ports.at(p); }
  std::span<const NodeRecord> nodes() const noexcept { return nodes_; }

  bool is_tree() const noexcept { return !nodes_.empty() && edge_count() + 1 == node_count(); }

  friend bool operator==(const PortLabeledGraph&, const PortLabeledGraph&) = default;

 private:
  std::vector<NodeRecord> nodes_;
};

/// Incremental construction with explicit port numbers on both ends.
class GraphAssembler {
 public:
  NodeId add_node(Label label) {
    nodes_.push_back(NodeRecord{label, {}});
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  void resize(std::size_t n) { nodes_.resize(n); }
  void set_label(NodeId v, Label label) { nodes_.at(v).label = label; }

  /// Returns false (and changes nothing) if either port slot is already taken.
  bool connect(NodeId u, Port pu, NodeId v, Port pv) {
    if (u >= nodes_.size() || v >= nodes_.size()) throw std::out_of_range("connect: node out of range");
    if (occupied(u, pu) || occupied(v, pv)) return false;
    slot(u, pu) = HalfEdge{v, pv};
    slot(v, pv) = HalfEdge{u, pu};
    return true;
  }

  std::size_t node_count() const noexcept { return nodes_.size(); }

  PortLabeledGraph build() && { return PortLabeledGraph(std::move(nodes_)); }
  PortLabeledGraph build() const& { return PortLabeledGraph(nodes_); }

 private:
  bool occupied(NodeId v, Port p) const {
    const auto& ports = nodes_[v].ports;
    return p < ports.size() && ports[p].neighbor != kNoNode;
  }
  HalfEdge& slot(NodeId v, Port p) {
    auto& ports = nodes_[v].ports;
    if (p >= ports.size()) ports.resize(static_cast<std::size_t>(p) + 1);
    return ports[p];
  }

  std::vector<NodeRecord> nodes_;
};

/// A graph with the agent's start node and the treasure node.
struct Instance {
  PortLabeledGraph graph;
  NodeId start = 0;
  NodeId treasure = 0;
};

enum class ViolationKind {
  empty_graph,
  missing_port,
  dangling_neighbor,
  self_loop,
  parallel_edge,
  reciprocity,
  duplicate_label,
  disconnected,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::empty_graph: return "empty-graph";
    case ViolationKind::missing_port: return "missing-port";
    case ViolationKind::dangling_neighbor: return "dangling-neighbor";
    case ViolationKind::self_loop: return "self-loop";
    case ViolationKind::parallel_edge: return "parallel-edge";
    case ViolationKind::reciprocity: return "reciprocity";
    case ViolationKind::duplicate_label: return "duplicate-label";
    case ViolationKind::disconnected: return "disconnected";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  NodeId node = kNoNode;
  std::optional<Port> port;
  std::string message;
};

inline std::vector<Violation> validate(const PortLabeledGraph& g) {
  std::vector<Violation> out;
  const auto nodes = g.nodes();
  const std::size_t n = nodes.size();
  if (n == 0) {
    out.push_back({ViolationKind::empty_graph, kNoNode, std::nullopt, "graph has no nodes"});
    return out;
  }

  std::unordered_map<Label, NodeId> first_with_label;
  for (NodeId v = 0; v < n; ++v) {
    const auto [it, inserted] = first_with_label.emplace(nodes[v].label, v);
    if (!inserted) {
      out.push_back({ViolationKind::duplicate_label, v, std::nullopt,
                     "label " + std::to_string(nodes[v].label) + " already used by node " +
                         std::to_string(it->second)});
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    const auto& ports = nodes[v].ports;
    std::unordered_set<NodeId> seen;
    for (Port p = 0; p < ports.size(); ++p) {
      const HalfEdge h = ports[p];
      const std::string where = "node " + std::to_string(v) + " port " + std::to_string(p);
      if (h.neighbor == kNoNode) {
        out.push_back({ViolationKind::missing_port, v, p, where + " is not connected"});
        continue;
      }
      if (h.neighbor >= n) {
        out.push_back({ViolationKind::dangling_neighbor, v, p, where + " leads to nonexistent node"});
        continue;
      }
      if (h.neighbor == v) {
        out.push_back({ViolationKind::self_loop, v, p, where + " is a self-loop"});
        continue;
      }
      if (!seen.insert(h.neighbor).second) {
        out.push_back({ViolationKind::parallel_edge, v, p,
                       where + " duplicates an edge to node " + std::to_string(h.neighbor)});
      }
      const auto& back = nodes[h.neighbor].ports;
      if (h.reciprocal >= back.size() || back[h.reciprocal].neighbor != v || back[h.reciprocal].reciprocal != p) {
        out.push_back({ViolationKind::reciprocity, v, p,
                       where + " -> (" + std::to_string(h.neighbor) + ", " + std::to_string(h.reciprocal) +
                           ") does not point back"});
      }
    }
  }

  std::vector<bool> reached(n, false);
  std::deque<NodeId> queue{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const HalfEdge& h : nodes[v].ports) {
      if (h.neighbor < n && !reached[h.neighbor]) {
        reached[h.neighbor] = true;
        ++count;
        queue.push_back(h.neighbor);
      }
    }
  }
  if (count != n) {
    for (NodeId v = 0; v < n; ++v) {
      if (!reached[v]) {
        out.push_back({ViolationKind::disconnected, v, std::nullopt,
                       "node " + std::to_string(v) + " is unreachable from node 0"});
        break;
      }
    }
  }
  return out;
}

/// Shortest route described as (node, outgoing port) steps.
struct PathStep {
  NodeId node;
  Port port;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct PathWithPorts {
  std::vector<PathStep> steps;
  NodeId terminal = kNoNode;

  std::size_t length() const noexcept { return steps.size(); }
  friend bool operator==(const PathWithPorts&, const PathWithPorts&) = default;
};

/// BFS from `source` expanding ports in ascending order. Returns distances and
/// the (parent, port-at-parent) through which each node was first discovered.
struct BfsTree {
  std::vector<std::size_t> distance;
  std::vector<PathStep> parent;
};

inline BfsTree bfs(const PortLabeledGraph& g, NodeId source) {
  const std::size_t n = g.node_count();
  if (source >= n) throw std::out_of_range("bfs: source out of range");
  BfsTree t{std::vector<std::size_t>(n, kUnreachable), std::vector<PathStep>(n, PathStep{kNoNode, 0})};
  std::deque<NodeId> queue{source};
  t.distance[source] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (Port p = 0; p < g.degree(v); ++p) {
      const NodeId w = g.follow(v, p).neighbor;
      if (t.distance[w] == kUnreachable) {
        t.distance[w] = t.distance[v] + 1;
        t.parent[w] = {v, p};
        queue.push_back(w);
      }
    }
  }
  return t;
}

inline std::vector<std::size_t> bfs_distances(const PortLabeledGraph& g, NodeId source) {
  return bfs(g, source).distance;
}

inline PathWithPorts shortest_path(const PortLabeledGraph& g, NodeId s, NodeId t) {
  if (t >= g.node_count()) throw std::out_of_range("shortest_path: target out of range");
  const BfsTree tree = bfs(g, s);
  if (tree.distance[t] == kUnreachable) throw std::invalid_argument("shortest_path: target unreachable");
  PathWithPorts path;
  path.terminal = t;
  for (NodeId v = t; v != s; v = tree.parent[v].node) path.steps.push_back(tree.parent[v]);
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

}  // namespace advice_hunt
