#pragma once

// Two-agent synchronous rendezvous and its equivalence with treasure hunt.
//
// Part 1: an inert agent (advice "0") waits while the other (advice "1" + a)
// hunts for it with FindTreasure advice a.
// Part 2: any rendezvous algorithm yields a treasure hunt by running it on two
// copies of the graph bridged at the treasure node; an agent that crosses the
// bridge has solved the hunt inside its own copy.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "advice_hunt/agent.hpp"
#include "advice_hunt/bitcodec.hpp"
#include "advice_hunt/generators.hpp"
#include "advice_hunt/graph.hpp"
#include "advice_hunt/oracle.hpp"

namespace advice_hunt {

struct Action {
  enum class Kind { move, stay, halt };
  Kind kind = Kind::halt;
  Port port = 0;

  static Action move(Port p) { return {Kind::move, p}; }
  static Action stay() { return {Kind::stay, 0}; }
  static Action halt() { return {Kind::halt, 0}; }
};

/// A mobile agent's decision procedure. One call per round; a halted agent
/// stays where it is for good.
class MobileAgent {
 public:
  virtual ~MobileAgent() = default;
  virtual Action act(const LocalView& here) = 0;
};

class InertAgent final : public MobileAgent {
 public:
  Action act(const LocalView&) override { return Action::halt(); }
};

class HuntingAgent final : public MobileAgent {
 public:
  explicit HuntingAgent(const BitString& advice) : agent_(advice) {}

  Action act(const LocalView& here) override {
    const auto step = agent_.next(here);
    if (step.kind == FindTreasureAgent::StepKind::halt) return Action::halt();
    return Action::move(step.port);
  }

 private:
  FindTreasureAgent agent_;
};

/// A rendezvous algorithm with advice: an oracle that sees the whole
/// instance, and the agents' procedure as a function of the advice alone.
class RendezvousAlgorithm {
 public:
  virtual ~RendezvousAlgorithm() = default;
  virtual std::pair<BitString, BitString> advise(const PortLabeledGraph& g, NodeId a_start, NodeId b_start) const = 0;
  virtual std::unique_ptr<MobileAgent> make_agent(const BitString& advice) const = 0;
};

/// Rendezvous built from FindTreasure: advice "1" + a for the searcher and
/// "0" for the agent that stays put.
class HuntReductionRendezvous final : public RendezvousAlgorithm {
 public:
  /// `ell` empty means full advice (ell = LogSum).
  explicit HuntReductionRendezvous(std::optional<std::uint64_t> ell = std::nullopt) : ell_(ell) {}

  std::pair<BitString, BitString> advise(const PortLabeledGraph& g, NodeId a_start, NodeId b_start) const override {
    const std::uint64_t ell = ell_ ? *ell_ : create_advice(g, a_start, b_start, 0).logsum;
    BitString a{true};
    a.append(create_advice(g, a_start, b_start, ell).encoded);
    return {std::move(a), BitString{false}};
  }

  std::unique_ptr<MobileAgent> make_agent(const BitString& advice) const override {
    if (advice.empty()) throw MalformedAdvice("empty rendezvous advice", 0);
    if (!advice[0]) {
      if (advice.size() != 1) throw MalformedAdvice("inert advice must be the single bit 0", 1);
      return std::make_unique<InertAgent>();
    }
    return std::make_unique<HuntingAgent>(advice.substr(1));
  }

 private:
  std::optional<std::uint64_t> ell_;
};

struct RendezvousOutcome {
  bool met = false;
  NodeId meeting_node = kNoNode;
  std::uint64_t rounds = 0;
  std::uint64_t total_cost = 0;
  BitString advice_a;
  BitString advice_b;
  // Ports taken by each agent, in order. Every entry is tagged forward.
  std::vector<Move> walk_a;
  std::vector<Move> walk_b;
};

inline constexpr std::uint64_t kUnboundedRounds = std::numeric_limits<std::uint64_t>::max();

/// Synchronous simulation: each round both agents act on their current view,
/// then move simultaneously. Meeting is only detected at nodes, at the end of
/// a round. Stops on meeting, when both agents have halted, or at the budget.
inline RendezvousOutcome simulate_rendezvous(const PortLabeledGraph& g, NodeId a_start, NodeId b_start,
                                             const RendezvousAlgorithm& algorithm,
                                             std::uint64_t max_rounds = kUnboundedRounds) {
  if (a_start == b_start) throw std::invalid_argument("simulate_rendezvous: agents must start apart");
  RendezvousOutcome out;
  std::tie(out.advice_a, out.advice_b) = algorithm.advise(g, a_start, b_start);
  std::unique_ptr<MobileAgent> agents[2] = {algorithm.make_agent(out.advice_a), algorithm.make_agent(out.advice_b)};
  NodeId position[2] = {a_start, b_start};
  std::optional<Port> entry[2];
  bool halted[2] = {false, false};
  std::vector<Move>* walks[2] = {&out.walk_a, &out.walk_b};

  while (out.rounds < max_rounds) {
    Action action[2];
    for (int i = 0; i < 2; ++i) {
      if (halted[i]) continue;
      action[i] = agents[i]->act(LocalView{g.label(position[i]), g.degree(position[i]), entry[i]});
      if (action[i].kind == Action::Kind::halt) halted[i] = true;
    }
    if (halted[0] && halted[1]) break;
    for (int i = 0; i < 2; ++i) {
      if (halted[i] || action[i].kind != Action::Kind::move) continue;
      const HalfEdge& h = g.follow(position[i], action[i].port);
      walks[i]->push_back(Move{position[i], action[i].port, MoveKind::forward});
      position[i] = h.neighbor;
      entry[i] = h.reciprocal;
      ++out.total_cost;
    }
    ++out.rounds;
    if (position[0] == position[1]) {
      out.met = true;
      out.meeting_node = position[0];
      break;
    }
  }
  return out;
}

inline RendezvousOutcome rendezvous_via_th(const PortLabeledGraph& g, NodeId a_start, NodeId b_start,
                                           std::optional<std::uint64_t> ell = std::nullopt) {
  return simulate_rendezvous(g, a_start, b_start, HuntReductionRendezvous(ell));
}

/// Raised when no agent crosses the bridge within the round budget.
class StrategyIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs an agent alone, showing it the labels `2l + copy` of the node labels
/// l, until `target` is reached, the agent halts, or the step budget ends.
inline HuntOutcome run_solo(const PortLabeledGraph& g, NodeId start, NodeId target, MobileAgent& agent,
                            std::uint64_t copy, std::uint64_t max_rounds = kUnboundedRounds) {
  HuntOutcome out;
  NodeId current = start;
  std::optional<Port> entry;
  out.found = current == target;
  for (std::uint64_t round = 0; !out.found && round < max_rounds; ++round) {
    const Action a = agent.act(LocalView{2 * g.label(current) + copy, g.degree(current), entry});
    if (a.kind == Action::Kind::halt) break;
    if (a.kind == Action::Kind::stay) continue;
    const HalfEdge& h = g.follow(current, a.port);
    out.trace.push_back(Move{current, a.port, MoveKind::forward});
    current = h.neighbor;
    entry = h.reciprocal;
    out.found = current == target;
  }
  out.cost = out.trace.size();
  out.final_node = current;
  return out;
}

struct ReducedHunt {
  HuntOutcome hunt;              // solo run in the original graph
  std::size_t copy = 0;          // which copy the crossing agent started in
  BitString advice;              // the crossing agent's advice followed by the bit `copy`
  DoubledGraph doubled;
  RendezvousOutcome rendezvous;  // the run in the doubled graph
  std::vector<Move> prefix_in_doubled;  // crossing agent's walk up to its first visit of w
};

inline ReducedHunt th_via_rendezvous(const PortLabeledGraph& g, NodeId v, NodeId w, const RendezvousAlgorithm& algorithm,
                                     std::uint64_t max_rounds = kUnboundedRounds) {
  ReducedHunt r;
  r.doubled = double_for_rendezvous(g, v, w);
  r.rendezvous = simulate_rendezvous(r.doubled.graph, r.doubled.a_start, r.doubled.b_start, algorithm, max_rounds);

  // First crossing of the bridge by each agent, if any.
  auto first_crossing = [&](const std::vector<Move>& walk) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      const Move& m = walk[i];
      if ((m.from == r.doubled.bridge[0] || m.from == r.doubled.bridge[1]) && m.port == r.doubled.bridge_port) return i;
    }
    return std::nullopt;
  };
  const auto cross_a = first_crossing(r.rendezvous.walk_a);
  const auto cross_b = first_crossing(r.rendezvous.walk_b);
  if (!cross_a && !cross_b) throw StrategyIncomplete("th_via_rendezvous: no agent crossed the bridge edge");
  r.copy = (cross_a && (!cross_b || *cross_a <= *cross_b)) ? 0 : 1;

  const std::vector<Move>& walk = r.copy == 0 ? r.rendezvous.walk_a : r.rendezvous.walk_b;
  const NodeId home_w = r.doubled.bridge[r.copy];
  NodeId at = r.copy == 0 ? r.doubled.a_start : r.doubled.b_start;
  for (const Move& m : walk) {
    if (at == home_w) break;
    r.prefix_in_doubled.push_back(m);
    at = r.doubled.graph.follow(m.from, m.port).neighbor;
  }

  const BitString& own_advice = r.copy == 0 ? r.rendezvous.advice_a : r.rendezvous.advice_b;
  r.advice = own_advice;
  r.advice.push_back(r.copy == 1);
  auto solo = algorithm.make_agent(own_advice);
  r.hunt = run_solo(g, v, w, *solo, r.copy, max_rounds);
  if (!r.hunt.found) throw StrategyIncomplete("th_via_rendezvous: solo run did not reach the target");
  return r;
}

}  // namespace advice_hunt
