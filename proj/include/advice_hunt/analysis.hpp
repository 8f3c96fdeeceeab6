#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "advice_hunt/agent.hpp"
#include "advice_hunt/bounds.hpp"
#include "advice_hunt/generators.hpp"
#include "advice_hunt/graph.hpp"
#include "advice_hunt/oracle.hpp"
#include "advice_hunt/rational.hpp"

namespace advice_hunt {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Bound reports
// ---------------------------------------------------------------------------

struct BoundReport {
  std::size_t distance = 0;
  std::size_t edges = 0;
  std::uint64_t ell = 0;
  Rational beta{1};
  std::uint64_t max_substring = 0;
  std::uint64_t measured_cost = 0;
  // Present only when beta < 1.
  std::optional<UpperBound> bound_general;
  std::optional<UpperBound> bound_tree;
  bool holds_general = true;
  bool holds_tree = true;
};

/// With full advice the exact cost is D and the bound fields stay empty. The
/// tree bound is only evaluated when the graph is a tree.
inline BoundReport make_bound_report(const PortLabeledGraph& g, const AdvicePlan& plan, const HuntOutcome& run) {
  BoundReport r;
  r.distance = plan.distance();
  r.edges = g.edge_count();
  r.ell = plan.ell;
  r.beta = plan.beta;
  r.max_substring = plan.max_substring_length();
  r.measured_cost = run.cost;
  if (plan.full_advice()) {
    r.holds_general = r.holds_tree = run.cost == plan.distance();
    return r;
  }
  r.bound_general = certified_bound(plan, r.edges, BoundKind::general);
  r.holds_general = r.bound_general->admits(run.cost);
  if (g.is_tree()) {
    r.bound_tree = certified_bound(plan, r.edges, BoundKind::tree);
    r.holds_tree = r.bound_tree->admits(run.cost);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Counting oracles behind the lower bound
// ---------------------------------------------------------------------------

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;  // exact at every step
  return result;
}

struct TupleCount {
  std::size_t dimension = 0;  // D
  std::uint64_t max_sum = 0;  // M
  std::uint64_t exact_count = 0;
  std::uint64_t stars_and_bars = 0;  // C(M+D, D)
  Rational bound{0};                 // (6M)^D / D!

  bool counts_agree() const noexcept { return exact_count == stars_and_bars; }
  bool within_bound() const noexcept { return max_sum == 0 || dimension == 0 || Rational(static_cast<std::int64_t>(exact_count)) <= bound; }
};

/// Enumerates all non-negative integer D-tuples with sum at most M.
inline TupleCount count_tuples_bruteforce(std::size_t dimension, std::uint64_t max_sum) {
  if (dimension > 5 || max_sum > 10) throw BudgetExceeded("count_tuples_bruteforce: needs D <= 5 and M <= 10");
  TupleCount t{dimension, max_sum};
  std::vector<std::uint64_t> tuple(dimension, 0);
  while (true) {
    std::uint64_t sum = 0;
    for (const auto x : tuple) sum += x;
    if (sum <= max_sum) ++t.exact_count;
    std::size_t pos = 0;
    while (pos < dimension && ++tuple[pos] > max_sum) tuple[pos++] = 0;
    if (pos == dimension) break;
  }
  t.stars_and_bars = binomial(max_sum + dimension, dimension);
  std::int64_t numerator = 1;
  std::int64_t factorial = 1;
  for (std::size_t i = 1; i <= dimension; ++i) {
    numerator *= static_cast<std::int64_t>(6 * max_sum);
    factorial *= static_cast<std::int64_t>(i);
  }
  t.bound = Rational(numerator, factorial);
  return t;
}

/// Canonical text of a labelled port graph, independent of node numbering.
inline std::string canonical_form(const PortLabeledGraph& g) {
  std::vector<std::tuple<Label, Port, Label, Port>> edges;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (Port p = 0; p < g.degree(v); ++p) {
      const HalfEdge& h = g.follow(v, p);
      const Label a = g.label(v);
      const Label b = g.label(h.neighbor);
      if (a < b) edges.emplace_back(a, p, b, h.reciprocal);
    }
  }
  std::sort(edges.begin(), edges.end());
  std::string out;
  for (const auto& [a, pa, b, pb] : edges) {
    out += std::to_string(a) + ':' + std::to_string(pa) + '-' + std::to_string(b) + ':' + std::to_string(pb) + ';';
  }
  return out;
}

struct CensusResult {
  std::uint64_t specs = 0;     // valid specs enumerated
  std::uint64_t distinct = 0;  // distinct labelled trees (with treasure placement)
  std::uint64_t expected = 0;  // k^D
  bool holds() const noexcept { return specs == expected && distinct == expected; }
};

inline CensusResult caterpillar_census(std::size_t D, std::size_t k) {
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < D; ++i) {
    expected *= k;
    if (expected > 100000) throw BudgetExceeded("caterpillar_census: k^D exceeds 10^5");
  }
  CensusResult r;
  r.expected = expected;
  std::set<std::string> seen;
  for_each_caterpillar_spec(D, k, [&](const CaterpillarSpec& spec) {
    const Instance inst = make_caterpillar(spec);
    ++r.specs;
    seen.insert(canonical_form(inst.graph) + "T" + std::to_string(inst.graph.label(inst.treasure)));
  });
  r.distinct = seen.size();
  return r;
}

// ---------------------------------------------------------------------------
// Miss decomposition on caterpillars
// ---------------------------------------------------------------------------

struct MissCheck {
  std::vector<std::uint64_t> misses;  // per level
  std::uint64_t total_misses = 0;
  std::uint64_t expected_cost = 0;  // D + 2 * total_misses
  std::uint64_t cost = 0;
  bool holds() const noexcept { return cost == expected_cost; }
};

/// Recounts misses from the trace alone: a backtrack that lands at progress
/// level i undoes one unsuccessful step taken from level i.
inline MissCheck miss_decomposition(const HuntOutcome& outcome, std::size_t distance) {
  MissCheck c;
  c.misses.assign(distance, 0);
  std::size_t level = 0;
  for (const Move& m : outcome.trace) {
    if (m.kind == MoveKind::forward) {
      ++level;
    } else {
      --level;
      if (level >= c.misses.size()) c.misses.resize(level + 1, 0);
      ++c.misses[level];
      ++c.total_misses;
    }
  }
  c.cost = outcome.cost;
  c.expected_cost = distance + 2 * c.total_misses;
  return c;
}

// ---------------------------------------------------------------------------
// Tradeoff sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  std::uint64_t ell = 0;  // requested budget
  std::uint64_t advice_bits = 0;
  std::uint64_t cost = 0;
  std::size_t distance = 0;
  std::size_t edges = 0;
  Rational beta{1};
  std::uint64_t max_substring = 0;
  UpperBound bound;
  bool holds = false;
  bool found = false;
};

inline SweepRow sweep_row(const PortLabeledGraph& g, NodeId start, NodeId treasure, std::uint64_t ell) {
  const AdvicePlan plan = create_advice(g, start, treasure, ell);
  const HuntOutcome run = find_treasure(g, start, treasure, plan.encoded);
  SweepRow row;
  row.ell = ell;
  row.advice_bits = plan.encoded.size();
  row.cost = run.cost;
  row.distance = plan.distance();
  row.edges = g.edge_count();
  row.beta = plan.beta;
  row.max_substring = plan.max_substring_length();
  row.bound = certified_bound(plan, row.edges, g.is_tree() ? BoundKind::tree : BoundKind::general);
  row.holds = row.bound.admits(run.cost);
  row.found = run.found;
  return row;
}

/// One row per budget, ordered by ell; LogSum is always included as the last
/// row. Rows are computed on up to `jobs` threads.
inline std::vector<SweepRow> sweep(const PortLabeledGraph& g, NodeId start, NodeId treasure,
                                   std::vector<std::uint64_t> ell_values, unsigned jobs = 1) {
  const std::uint64_t logsum = create_advice(g, start, treasure, 0).logsum;
  for (const auto ell : ell_values) {
    if (ell > logsum) throw std::out_of_range("sweep: ell " + std::to_string(ell) + " exceeds LogSum");
  }
  ell_values.push_back(logsum);
  std::sort(ell_values.begin(), ell_values.end());
  ell_values.erase(std::unique(ell_values.begin(), ell_values.end()), ell_values.end());

  std::vector<SweepRow> rows(ell_values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = sweep_row(g, start, treasure, ell_values[i]);
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  return rows;
}

inline constexpr const char* kSweepHeader = "ell,advice_bits,cost,D,e,beta_num,beta_den,A_max,bound,holds,found";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    os << r.ell << ',' << r.advice_bits << ',' << r.cost << ',' << r.distance << ',' << r.edges << ','
       << r.beta.numerator() << ',' << r.beta.denominator() << ',' << r.max_substring << ',' << r.bound.to_decimal()
       << ',' << (r.holds ? "true" : "false") << ',' << (r.found ? "true" : "false") << '\n';
  }
}

}  // namespace advice_hunt
