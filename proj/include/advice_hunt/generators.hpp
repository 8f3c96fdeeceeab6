#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "advice_hunt/graph.hpp"
#include "advice_hunt/random.hpp"

namespace advice_hunt {

// ---------------------------------------------------------------------------
// Caterpillars
// ---------------------------------------------------------------------------

/// One member of the caterpillar family: a spine v_0..v_D where every v_i with
/// i < D carries k-1 pendant leaves, identified by the spine's forward ports.
struct CaterpillarSpec {
  std::size_t distance = 1;  // D
  std::size_t k = 2;
  std::vector<Port> forward_ports;  // p_0..p_{D-1}
};

/// Empty string when the spec is valid, otherwise the reason it is not.
inline std::string check_caterpillar_spec(const CaterpillarSpec& spec) {
  if (spec.distance < 1) return "D must be at least 1";
  if (spec.k < 2) return "k must be at least 2";
  if (spec.forward_ports.size() != spec.distance) {
    return "expected " + std::to_string(spec.distance) + " forward ports, got " +
           std::to_string(spec.forward_ports.size());
  }
  if (spec.forward_ports[0] >= spec.k) return "p_0 must be below k";
  for (std::size_t i = 1; i < spec.distance; ++i) {
    const Port p = spec.forward_ports[i];
    if (p > spec.k) return "p_" + std::to_string(i) + " must be at most k";
    if (p == spec.forward_ports[i - 1]) {
      return "p_" + std::to_string(i) + " equals the back port at v_" + std::to_string(i);
    }
  }
  return {};
}

/// Node indices follow label order: v_0, its leaves by port, v_1, ..., v_D.
/// v_i has label i(k+2); the leaf behind port j of v_i has label i(k+2)+j+1;
/// v_D has label D(k+2). Edge {v_i, v_{i+1}} uses port p_i at both ends for
/// i <= D-2; v_D and the leaves use their only port 0.
inline Instance make_caterpillar(const CaterpillarSpec& spec) {
  if (const auto why = check_caterpillar_spec(spec); !why.empty()) {
    throw std::invalid_argument("make_caterpillar: " + why);
  }
  const std::size_t D = spec.distance;
  const std::size_t k = spec.k;
  const Label stride = k + 2;

  GraphAssembler a;
  std::vector<NodeId> spine(D + 1);
  std::vector<std::vector<std::pair<Port, NodeId>>> leaves(D);
  for (std::size_t i = 0; i < D; ++i) {
    spine[i] = a.add_node(i * stride);
    const std::size_t deg = i == 0 ? k : k + 1;
    const Port forward = spec.forward_ports[i];
    const std::optional<Port> back = i == 0 ? std::nullopt : std::optional<Port>(spec.forward_ports[i - 1]);
    for (Port j = 0; j < deg; ++j) {
      if (j == forward || j == back) continue;
      leaves[i].emplace_back(j, a.add_node(i * stride + j + 1));
    }
  }
  spine[D] = a.add_node(D * stride);

  for (std::size_t i = 0; i < D; ++i) {
    for (const auto& [port, leaf] : leaves[i]) a.connect(spine[i], port, leaf, 0);
    const Port p = spec.forward_ports[i];
    a.connect(spine[i], p, spine[i + 1], i + 1 < D ? p : 0);
  }
  return Instance{std::move(a).build(), spine[0], spine[D]};
}

/// Visits every valid spec of T(D, k) in lexicographic port order.
inline void for_each_caterpillar_spec(std::size_t D, std::size_t k,
                                      const std::function<void(const CaterpillarSpec&)>& visit) {
  if (D < 1 || k < 2) throw std::invalid_argument("for_each_caterpillar_spec: need D >= 1, k >= 2");
  CaterpillarSpec spec{D, k, std::vector<Port>(D, 0)};
  // Position i > 0 ranges over {0..k} minus p_{i-1}; enumerate k choices per
  // position as indices and map them to ports.
  std::vector<std::size_t> choice(D, 0);
  while (true) {
    spec.forward_ports[0] = static_cast<Port>(choice[0]);
    for (std::size_t i = 1; i < D; ++i) {
      const auto c = static_cast<Port>(choice[i]);
      spec.forward_ports[i] = c < spec.forward_ports[i - 1] ? c : c + 1;
    }
    visit(spec);
    std::size_t pos = D;
    while (pos > 0) {
      --pos;
      if (++choice[pos] < k) break;
      choice[pos] = 0;
      if (pos == 0) return;
    }
  }
}

// ---------------------------------------------------------------------------
// Doubling construction for rendezvous
// ---------------------------------------------------------------------------

/// Two copies H_0, H_1 of a graph whose copies of `w` are joined by a bridge.
struct DoubledGraph {
  PortLabeledGraph graph;
  NodeId a_start = 0;  // copy of v in H_0
  NodeId b_start = 0;  // copy of v in H_1
  NodeId bridge[2] = {0, 0};  // copies of w
  Port bridge_port = 0;       // deg(w), used at both bridge endpoints
  std::size_t original_nodes = 0;

  /// Copy index (0 or 1) and original node for a node of the doubled graph.
  std::pair<std::size_t, NodeId> original_of(NodeId x) const {
    return {x / original_nodes, static_cast<NodeId>(x % original_nodes)};
  }
};

inline DoubledGraph double_for_rendezvous(const PortLabeledGraph& g, NodeId v, NodeId w) {
  const std::size_t n = g.node_count();
  if (v >= n || w >= n) throw std::out_of_range("double_for_rendezvous: node out of range");
  if (v == w) throw std::invalid_argument("double_for_rendezvous: v and w must differ");

  std::vector<NodeRecord> nodes(2 * n);
  for (std::size_t copy = 0; copy < 2; ++copy) {
    for (NodeId x = 0; x < n; ++x) {
      NodeRecord& r = nodes[copy * n + x];
      r.label = 2 * g.label(x) + copy;
      r.ports.reserve(g.degree(x) + (x == w ? 1 : 0));
      for (const HalfEdge& h : g.nodes()[x].ports) {
        r.ports.push_back(HalfEdge{static_cast<NodeId>(copy * n + h.neighbor), h.reciprocal});
      }
    }
  }
  const auto port = static_cast<Port>(g.degree(w));
  const auto w0 = w;
  const auto w1 = static_cast<NodeId>(n + w);
  nodes[w0].ports.push_back(HalfEdge{w1, port});
  nodes[w1].ports.push_back(HalfEdge{w0, port});

  DoubledGraph out;
  out.graph = PortLabeledGraph(std::move(nodes));
  out.a_start = v;
  out.b_start = static_cast<NodeId>(n + v);
  out.bridge[0] = w0;
  out.bridge[1] = w1;
  out.bridge_port = port;
  out.original_nodes = n;
  return out;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

namespace detail {

/// Edges of a uniformly random labelled tree on n nodes (Pruefer decoding).
inline std::vector<std::pair<NodeId, NodeId>> random_tree_edges(std::size_t n, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  if (n < 2) return edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return edges;
  }
  std::vector<NodeId> code(n - 2);
  for (auto& c : code) c = static_cast<NodeId>(uniform_below(rng, n));
  std::vector<std::size_t> degree(n, 1);
  for (const NodeId c : code) ++degree[c];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> leaves;
  for (NodeId v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  for (const NodeId c : code) {
    const NodeId leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  const NodeId u = leaves.top();
  leaves.pop();
  edges.emplace_back(u, leaves.top());
  return edges;
}

}  // namespace detail

/// Uniform random spanning tree plus e-n+1 distinct random extra edges, with
/// a random port permutation at every node and shuffled labels 0..n-1.
/// Deterministic for a fixed seed.
inline PortLabeledGraph random_connected_graph(std::size_t n, std::size_t e, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_connected_graph: need at least one node");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (e + 1 < n || e > max_edges) {
    throw std::invalid_argument("random_connected_graph: infeasible (n, e) = (" + std::to_string(n) + ", " +
                                std::to_string(e) + ")");
  }
  Rng rng(seed);
  auto edges = detail::random_tree_edges(n, rng);

  std::set<std::pair<NodeId, NodeId>> present;
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    present.emplace(u, v);
  }
  const std::size_t extra = e - edges.size();
  if (extra > 0) {
    const std::size_t free_pairs = max_edges - edges.size();
    if (2 * extra <= free_pairs) {
      while (present.size() < e) {
        auto u = static_cast<NodeId>(uniform_below(rng, n));
        auto v = static_cast<NodeId>(uniform_below(rng, n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (present.emplace(u, v).second) edges.emplace_back(u, v);
      }
    } else {
      std::vector<std::pair<NodeId, NodeId>> candidates;
      candidates.reserve(free_pairs);
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
          if (!present.contains({u, v})) candidates.emplace_back(u, v);
        }
      }
      shuffle(rng, std::span(candidates));
      edges.insert(edges.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(extra));
    }
  }

  std::vector<std::vector<NodeId>> neighbors(n);
  for (const auto& [u, v] : edges) {
    neighbors[u].push_back(v);
    neighbors[v].push_back(u);
  }
  for (auto& list : neighbors) shuffle(rng, std::span(list));
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  shuffle(rng, std::span(labels));

  std::vector<NodeRecord> nodes(n);
  for (NodeId v = 0; v < n; ++v) {
    nodes[v].label = labels[v];
    nodes[v].ports.resize(neighbors[v].size());
  }
  // Port of u at v's end: position of u in v's (shuffled) list.
  std::vector<std::unordered_map<NodeId, Port>> port_of(n);
  for (NodeId v = 0; v < n; ++v) {
    for (Port p = 0; p < neighbors[v].size(); ++p) port_of[v].emplace(neighbors[v][p], p);
  }
  for (NodeId v = 0; v < n; ++v) {
    for (Port p = 0; p < neighbors[v].size(); ++p) {
      const NodeId w = neighbors[v][p];
      nodes[v].ports[p] = HalfEdge{w, port_of[w].at(v)};
    }
  }
  return PortLabeledGraph(std::move(nodes));
}

inline PortLabeledGraph random_tree(std::size_t n, std::uint64_t seed) {
  return random_connected_graph(n, n - 1, seed);
}

/// Attaches a seeded choice of distinct start and treasure nodes (equal only
/// when the graph has a single node).
inline Instance with_random_endpoints(PortLabeledGraph g, std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("with_random_endpoints: empty graph");
  const auto start = static_cast<NodeId>(uniform_below(rng, n));
  NodeId treasure = start;
  if (n > 1) {
    treasure = static_cast<NodeId>(uniform_below(rng, n - 1));
    if (treasure >= start) ++treasure;
  }
  return Instance{std::move(g), start, treasure};
}

}  // namespace advice_hunt
