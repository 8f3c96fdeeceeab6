#pragma once

// The FindTreasure agent: a depth-bounded search that, at progress level i,
// only tries the ports of the sector named by advice substring A_i.
//
// The recursive TakeStep procedure is realized as a resumable step machine so
// the same agent can be driven solo (treasure hunt) or inside the synchronous
// rendezvous simulator. The agent only ever sees local information: the label
// and degree of its node and the port it arrived through.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "advice_hunt/bitcodec.hpp"
#include "advice_hunt/graph.hpp"
#include "advice_hunt/rational.hpp"

namespace advice_hunt {

/// What an agent perceives at its current node.
struct LocalView {
  Label label = 0;
  std::size_t degree = 0;
  std::optional<Port> entry_port;  // empty at the starting node
};

enum class MoveKind { forward, backtrack };

struct Move {
  NodeId from = kNoNode;
  Port port = 0;
  MoveKind kind = MoveKind::forward;
  friend bool operator==(const Move&, const Move&) = default;
};

/// One evaluation of the search guard that came out true.
struct GuardEvent {
  NodeId node = kNoNode;
  std::size_t level = 0;
  friend bool operator==(const GuardEvent&, const GuardEvent&) = default;
};

class FindTreasureAgent {
 public:
  enum class StepKind { forward, backtrack, halt };
  struct Step {
    StepKind kind = StepKind::halt;
    Port port = 0;
  };

  explicit FindTreasureAgent(AdvicePayload advice)
      : advice_(std::move(advice)),
        ell_(advice_.total_substring_bits()),
        logsum_(advice_.logsum()) {}

  explicit FindTreasureAgent(const BitString& advice) : FindTreasureAgent(decode(advice)) {}

  std::size_t distance() const noexcept { return advice_.distance(); }
  std::uint64_t ell() const noexcept { return ell_; }
  std::uint64_t logsum() const noexcept { return logsum_; }
  std::size_t progress() const noexcept { return frames_.size() - (frames_.empty() ? 0 : 1); }

  /// Levels at which the guard fired, in order. Indices match calls to next().
  const std::vector<std::size_t>& guard_levels() const noexcept { return guard_levels_; }

  /// Called on arrival at a node (and once at the start) after the caller has
  /// checked for the treasure. Returns the agent's next action.
  Step next(const LocalView& here) {
    switch (pending_) {
      case Pending::start:
        enter(here, 0);
        break;
      case Pending::forward_arrival:
        enter(here, frames_.back().level + 1);
        break;
      case Pending::backtrack_arrival:
        break;
      case Pending::halted:
        return Step{StepKind::halt, 0};
    }
    return advance();
  }

 private:
  enum class Pending { start, forward_arrival, backtrack_arrival, halted };

  struct Frame {
    std::optional<Port> entry_port;
    std::size_t level = 0;
    std::uint64_t degree = 0;
    std::uint64_t next_port = 1;  // empty range by default
    std::uint64_t last_port = 0;
  };

  void enter(const LocalView& here, std::size_t level) {
    Frame f{here.entry_port, level, here.degree};
    if (level < advice_.distance()) {
      const auto it = min_level_.find(here.label);
      if (it == min_level_.end() || level < it->second) {
        min_level_[here.label] = level;
        guard_levels_.push_back(level);
        const BitString& code = advice_.substrings[level];
        const auto expected = expected_substring_length(here.degree, ell_, logsum_);
        if (expected && *expected == code.size()) {
          const PortRange sector = get_sector(here.degree, code);
          f.next_port = sector.first;
          f.last_port = sector.last;
        }
      }
    }
    frames_.push_back(f);
  }

  Step advance() {
    Frame& top = frames_.back();
    if (top.next_port <= top.last_port && top.next_port < top.degree) {
      const auto port = static_cast<Port>(top.next_port++);
      pending_ = Pending::forward_arrival;
      return Step{StepKind::forward, port};
    }
    const std::optional<Port> entry = top.entry_port;
    frames_.pop_back();
    if (frames_.empty()) {
      // Returning to "prev" at the start node is a no-op.
      pending_ = Pending::halted;
      return Step{StepKind::halt, 0};
    }
    pending_ = Pending::backtrack_arrival;
    return Step{StepKind::backtrack, *entry};
  }

  AdvicePayload advice_;
  std::uint64_t ell_;
  std::uint64_t logsum_;
  std::vector<Frame> frames_;
  std::unordered_map<Label, std::size_t> min_level_;
  std::vector<std::size_t> guard_levels_;
  Pending pending_ = Pending::start;
};

struct HuntOutcome {
  bool found = false;
  std::uint64_t cost = 0;
  NodeId final_node = kNoNode;
  std::vector<Move> trace;
  std::vector<std::uint64_t> per_level_misses;  // miss_0..miss_{D-1}
  std::vector<GuardEvent> guard_events;
};

/// Forward moves that were later undone, grouped by the progress level they
/// left from. Every such move costs two traversals.
inline std::vector<std::uint64_t> misses_by_level(const std::vector<Move>& trace, std::size_t levels) {
  std::vector<std::uint64_t> misses(levels, 0);
  std::vector<std::size_t> open_levels;
  for (const Move& m : trace) {
    if (m.kind == MoveKind::forward) {
      open_levels.push_back(open_levels.size());
    } else if (!open_levels.empty()) {
      const std::size_t level = open_levels.back();
      open_levels.pop_back();
      if (level >= misses.size()) misses.resize(level + 1, 0);
      ++misses[level];
    }
  }
  return misses;
}

using TreasurePredicate = std::function<bool(NodeId)>;

/// Runs FindTreasure from `start`. The treasure is detected on arrival
/// (including at `start`), after which no further moves are charged.
inline HuntOutcome find_treasure(const PortLabeledGraph& g, NodeId start, const TreasurePredicate& is_treasure,
                                 const BitString& advice) {
  FindTreasureAgent agent(advice);
  HuntOutcome out;
  NodeId current = start;
  std::optional<Port> entry;
  out.final_node = current;
  if (is_treasure(current)) {
    out.found = true;
    out.per_level_misses.assign(agent.distance(), 0);
    return out;
  }
  while (true) {
    const std::size_t events_before = agent.guard_levels().size();
    const auto step = agent.next(LocalView{g.label(current), g.degree(current), entry});
    if (agent.guard_levels().size() != events_before) {
      out.guard_events.push_back(GuardEvent{current, agent.guard_levels().back()});
    }
    if (step.kind == FindTreasureAgent::StepKind::halt) break;
    const HalfEdge& h = g.follow(current, step.port);
    out.trace.push_back(Move{current, step.port,
                             step.kind == FindTreasureAgent::StepKind::forward ? MoveKind::forward
                                                                               : MoveKind::backtrack});
    current = h.neighbor;
    entry = h.reciprocal;
    if (is_treasure(current)) {
      out.found = true;
      break;
    }
  }
  out.cost = out.trace.size();
  out.final_node = current;
  out.per_level_misses = misses_by_level(out.trace, agent.distance());
  return out;
}

inline HuntOutcome find_treasure(const PortLabeledGraph& g, NodeId start, NodeId treasure, const BitString& advice) {
  return find_treasure(g, start, [treasure](NodeId v) { return v == treasure; }, advice);
}

struct ReplayReport {
  bool consistent = true;
  NodeId final_node = kNoNode;
  std::uint64_t cost = 0;
  std::optional<std::size_t> bad_index;
  std::string problem;
};

/// Re-walks a trace, checking that every port exists and every backtrack
/// leaves through the port the trail's top edge arrived on.
inline ReplayReport replay(const PortLabeledGraph& g, NodeId start, const std::vector<Move>& trace) {
  ReplayReport r;
  NodeId current = start;
  std::vector<Port> trail;  // entry port at the arrival end of each trail edge
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Move& m = trace[i];
    auto fail = [&](std::string why) {
      r.consistent = false;
      r.bad_index = i;
      r.problem = std::move(why);
      r.final_node = current;
      r.cost = i;
      return r;
    };
    if (m.from != current) return fail("move starts at node " + std::to_string(m.from) + " but agent is at " + std::to_string(current));
    if (m.port >= g.degree(current)) return fail("port " + std::to_string(m.port) + " does not exist");
    if (m.kind == MoveKind::backtrack) {
      if (trail.empty()) return fail("backtrack with empty trail");
      if (trail.back() != m.port) return fail("backtrack port differs from trail entry port");
      trail.pop_back();
    }
    const HalfEdge& h = g.follow(current, m.port);
    if (m.kind == MoveKind::forward) trail.push_back(h.reciprocal);
    current = h.neighbor;
  }
  r.final_node = current;
  r.cost = trace.size();
  return r;
}

}  // namespace advice_hunt
