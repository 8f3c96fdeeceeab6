#pragma once

// Advice construction for a known instance, and choice of the advice budget
// ell for a target cost.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "advice_hunt/agent.hpp"
#include "advice_hunt/bitcodec.hpp"
#include "advice_hunt/bounds.hpp"
#include "advice_hunt/graph.hpp"
#include "advice_hunt/rational.hpp"

namespace advice_hunt {

struct AdvicePlan {
  PathWithPorts path;
  std::vector<std::uint64_t> path_degrees;  // deg(v_0)..deg(v_{D-1})
  std::uint64_t logsum = 0;
  std::uint64_t requested_ell = 0;
  /// Budget actually encoded; equals the sum of substring lengths.
  std::uint64_t ell = 0;
  Rational beta{1};
  std::vector<BitString> substrings;  // A_0..A_{D-1}
  BitString logsum_bits;
  BitString encoded;

  std::size_t distance() const noexcept { return path.length(); }
  bool full_advice() const noexcept { return ell == logsum; }

  std::uint64_t substring_bits() const noexcept {
    std::uint64_t total = 0;
    for (const auto& a : substrings) total += a.size();
    return total;
  }

  /// Index m of a longest substring (first one on ties); 0 when D = 0.
  std::size_t max_substring_index() const noexcept {
    std::size_t m = 0;
    for (std::size_t i = 1; i < substrings.size(); ++i) {
      if (substrings[i].size() > substrings[m].size()) m = i;
    }
    return m;
  }

  std::uint64_t max_substring_length() const noexcept {
    return substrings.empty() ? 0 : substrings[max_substring_index()].size();
  }
};

inline std::uint64_t sum_of_substring_lengths(std::span<const std::uint64_t> degrees, std::uint64_t ell,
                                              std::uint64_t logsum) {
  std::uint64_t total = 0;
  for (const auto d : degrees) total += expected_substring_length(d, ell, logsum).value_or(0);
  return total;
}

/// The agent recovers ell as the sum of the substring lengths, which is at
/// most the budget the oracle used. The two agree only at a fixed point of
/// ell -> sum_i floor(ceil(log2 deg_i) * ell / logsum). That map is monotone
/// and never increases ell, so iterating it from the requested budget reaches
/// the largest fixed point below it (0 and logsum are always fixed points).
inline std::uint64_t consistent_ell(std::span<const std::uint64_t> degrees, std::uint64_t ell, std::uint64_t logsum) {
  while (true) {
    const std::uint64_t next = sum_of_substring_lengths(degrees, ell, logsum);
    if (next == ell) return ell;
    ell = next;
  }
}

inline AdvicePlan create_advice(const PortLabeledGraph& g, NodeId start, NodeId treasure, std::uint64_t ell) {
  AdvicePlan plan;
  plan.path = shortest_path(g, start, treasure);
  for (const PathStep& s : plan.path.steps) {
    plan.path_degrees.push_back(g.degree(s.node));
    plan.logsum += ceil_log2(g.degree(s.node));
  }
  if (ell > plan.logsum) {
    throw std::out_of_range("create_advice: ell = " + std::to_string(ell) + " exceeds LogSum = " +
                            std::to_string(plan.logsum));
  }
  plan.requested_ell = ell;
  plan.ell = plan.logsum == 0 ? 0 : consistent_ell(plan.path_degrees, ell, plan.logsum);
  plan.beta = plan.logsum == 0 ? Rational(1)
                               : Rational(static_cast<std::int64_t>(plan.ell), static_cast<std::int64_t>(plan.logsum));
  for (std::size_t i = 0; i < plan.path.length(); ++i) {
    const std::uint64_t deg = plan.path_degrees[i];
    // A zero LogSum means every path node has degree 1: zero-length codes.
    const std::uint64_t z = expected_substring_length(deg, plan.ell, plan.logsum).value_or(0);
    plan.substrings.push_back(encode_sector_number(deg, plan.path.steps[i].port, z));
  }
  plan.logsum_bits = BitString::minimal_binary(plan.logsum);
  plan.encoded = concat(plan.substrings, plan.logsum_bits);
  return plan;
}

/// Certified cost ceiling for a plan: D when every sector is a single port,
/// otherwise the general or tree bound.
inline UpperBound certified_bound(const AdvicePlan& plan, std::size_t edges, BoundKind kind,
                                  std::uint64_t constant = 16) {
  if (plan.full_advice()) return UpperBound(BigInt(plan.distance()), 0);
  return cost_bound(kind, plan.distance(), edges, plan.ell, plan.logsum, plan.max_substring_length(), constant);
}

enum class SelectionMode { certified, empirical };

struct EllSelection {
  std::uint64_t ell = 0;
  AdvicePlan plan;
  std::optional<UpperBound> bound;             // certified mode
  std::optional<std::uint64_t> measured_cost;  // empirical mode
};

/// Smallest ell whose advice meets cost C: the bound itself is at most C
/// (certified) or the simulated cost is at most C (empirical). Trees use the
/// tree bound.
inline EllSelection select_ell(const PortLabeledGraph& g, NodeId start, NodeId treasure, std::uint64_t target_cost,
                               SelectionMode mode) {
  const auto distance = bfs_distances(g, start).at(treasure);
  if (target_cost < distance) {
    throw std::invalid_argument("select_ell: target cost " + std::to_string(target_cost) + " is below distance " +
                                std::to_string(distance));
  }
  const BoundKind kind = g.is_tree() ? BoundKind::tree : BoundKind::general;
  const std::uint64_t logsum = create_advice(g, start, treasure, 0).logsum;
  for (std::uint64_t ell = 0; ell <= logsum; ++ell) {
    AdvicePlan plan = create_advice(g, start, treasure, ell);
    if (mode == SelectionMode::certified) {
      UpperBound bound = certified_bound(plan, g.edge_count(), kind);
      if (bound.at_most(target_cost)) return EllSelection{ell, std::move(plan), std::move(bound), std::nullopt};
    } else {
      const HuntOutcome run = find_treasure(g, start, treasure, plan.encoded);
      if (run.found && run.cost <= target_cost) return EllSelection{ell, std::move(plan), std::nullopt, run.cost};
    }
  }
  // ell = LogSum always yields cost D <= C.
  throw std::logic_error("select_ell: no budget met the target cost");
}

}  // namespace advice_hunt
