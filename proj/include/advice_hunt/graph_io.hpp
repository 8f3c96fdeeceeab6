#pragma once

// Plain-text graph and instance files.
//
//   graph-v1
//   nodes <n>
//   node <index> <label>
//   edge <u> <port_u> <v> <port_v>
//   start <index>          (instance files)
//   treasure <index>       (instance files)
//
// '#' starts a comment. Every edge is listed once. A file may also carry only
// the header plus start/treasure lines, referring to a graph stored elsewhere.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "advice_hunt/graph.hpp"

namespace advice_hunt {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message, const std::string& source = {})
      : std::runtime_error((source.empty() ? "line " : source + ":") + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

struct ParsedFile {
  std::optional<PortLabeledGraph> graph;
  std::optional<NodeId> start;
  std::optional<NodeId> treasure;
};

inline void write_graph_body(std::ostream& os, const PortLabeledGraph& g) {
  os << "nodes " << g.node_count() << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) os << "node " << v << ' ' << g.label(v) << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (Port p = 0; p < g.degree(v); ++p) {
      const HalfEdge& h = g.follow(v, p);
      if (v < h.neighbor) os << "edge " << v << ' ' << p << ' ' << h.neighbor << ' ' << h.reciprocal << '\n';
    }
  }
}

inline void write_graph(std::ostream& os, const PortLabeledGraph& g) {
  os << "graph-v1\n";
  write_graph_body(os, g);
}

inline void write_instance(std::ostream& os, const Instance& inst) {
  write_graph(os, inst.graph);
  os << "start " << inst.start << '\n' << "treasure " << inst.treasure << '\n';
}

inline std::string to_text(const PortLabeledGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

inline std::uint64_t parse_uint(std::string_view word, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc{} || ptr != word.data() + word.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(word) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses a graph or instance file. The graph, when present, is checked
/// against every structural invariant; offending input raises ParseError.
inline ParsedFile parse_graph_text(std::istream& in) {
  using detail::parse_uint;
  ParsedFile out;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  std::optional<std::size_t> node_count;
  std::size_t nodes_line = 0;
  GraphAssembler assembler;
  std::vector<bool> declared;
  std::map<std::pair<NodeId, Port>, std::size_t> port_line;

  auto node_index = [&](std::string_view word, std::size_t line) {
    const std::uint64_t v = parse_uint(word, line);
    if (!node_count) throw ParseError(line, "'nodes' must precede node references");
    if (v >= *node_count) throw ParseError(line, "node index " + std::to_string(v) + " out of range");
    return static_cast<NodeId>(v);
  };
  auto expect_args = [](const std::vector<std::string_view>& w, std::size_t n, std::size_t line) {
    if (w.size() != n + 1) {
      throw ParseError(line, "'" + std::string(w[0]) + "' takes " + std::to_string(n) + " argument(s)");
    }
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = detail::split_words(line);
    if (words.empty()) continue;
    const std::string_view key = words[0];
    if (!header) {
      if (key != "graph-v1" || words.size() != 1) throw ParseError(line_no, "expected header 'graph-v1'");
      header = true;
      continue;
    }
    if (key == "nodes") {
      expect_args(words, 1, line_no);
      if (node_count) throw ParseError(line_no, "duplicate 'nodes' line");
      const std::uint64_t n = parse_uint(words[1], line_no);
      if (n == 0) throw ParseError(line_no, "graph must have at least one node");
      if (n > kNoNode) throw ParseError(line_no, "too many nodes");
      node_count = static_cast<std::size_t>(n);
      nodes_line = line_no;
      assembler.resize(*node_count);
      declared.assign(*node_count, false);
    } else if (key == "node") {
      expect_args(words, 2, line_no);
      const NodeId v = node_index(words[1], line_no);
      if (declared[v]) throw ParseError(line_no, "node " + std::to_string(v) + " declared twice");
      declared[v] = true;
      assembler.set_label(v, parse_uint(words[2], line_no));
    } else if (key == "edge") {
      expect_args(words, 4, line_no);
      const NodeId u = node_index(words[1], line_no);
      const std::uint64_t pu = parse_uint(words[2], line_no);
      const NodeId v = node_index(words[3], line_no);
      const std::uint64_t pv = parse_uint(words[4], line_no);
      if (pu >= *node_count || pv >= *node_count) throw ParseError(line_no, "port number exceeds node count");
      if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
      if (!assembler.connect(u, static_cast<Port>(pu), v, static_cast<Port>(pv))) {
        throw ParseError(line_no, "port already in use");
      }
      port_line[{u, static_cast<Port>(pu)}] = line_no;
      port_line[{v, static_cast<Port>(pv)}] = line_no;
    } else if (key == "start" || key == "treasure") {
      expect_args(words, 1, line_no);
      const std::uint64_t v = parse_uint(words[1], line_no);
      if (node_count && v >= *node_count) throw ParseError(line_no, "node index out of range");
      auto& slot = key == "start" ? out.start : out.treasure;
      if (slot) throw ParseError(line_no, "duplicate '" + std::string(key) + "' line");
      slot = static_cast<NodeId>(v);
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(key) + "'");
    }
  }
  if (!header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'graph-v1'");

  if (node_count) {
    for (NodeId v = 0; v < *node_count; ++v) {
      if (!declared[v]) throw ParseError(nodes_line, "node " + std::to_string(v) + " is never declared");
    }
    PortLabeledGraph g = std::move(assembler).build();
    const auto violations = validate(g);
    if (!violations.empty()) {
      const Violation& first = violations.front();
      std::size_t where = nodes_line;
      if (first.port) {
        // A missing port has no edge line; point at the next port's edge if any.
        const auto it = port_line.lower_bound({first.node, *first.port});
        if (it != port_line.end() && it->first.first == first.node) where = it->second;
      }
      throw ParseError(where, std::string(to_string(first.kind)) + ": " + first.message);
    }
    out.graph = std::move(g);
  }
  return out;
}

inline ParsedFile parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph_text(in);
}

inline ParsedFile load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return parse_graph_text(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path);
  }
}

}  // namespace advice_hunt
