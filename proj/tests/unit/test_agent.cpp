#include <gtest/gtest.h>

#include "advice_hunt/advice_hunt.hpp"
#include "support/naive_takestep.hpp"
#include "support/suite.hpp"

using namespace advice_hunt;

TEST(FindTreasure, FullAdviceCostsExactlyDistance) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    for (const Instance& inst : {suite::random_graph_instance(seed), suite::random_tree_instance(seed)}) {
      const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, suite::logsum_of(inst));
      const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, plan.encoded);
      ASSERT_TRUE(run.found);
      ASSERT_EQ(run.cost, plan.distance());
      ASSERT_EQ(run.final_node, inst.treasure);
      for (const auto m : run.per_level_misses) ASSERT_EQ(m, 0U);
    }
  }
}

TEST(FindTreasure, TreasureAtStart) {
  const auto g = random_tree(6, 1);
  const AdvicePlan plan = create_advice(g, 3, 3, 0);
  const HuntOutcome run = find_treasure(g, 3, 3, plan.encoded);
  EXPECT_TRUE(run.found);
  EXPECT_EQ(run.cost, 0U);
  EXPECT_TRUE(run.trace.empty());
}

TEST(FindTreasure, PartialAdviceFindsTreasure) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = suite::random_graph_instance(seed, 50);
    const std::uint64_t logsum = suite::logsum_of(inst);
    for (std::uint64_t ell = 0; ell <= logsum; ++ell) {
      const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, ell);
      const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, plan.encoded);
      ASSERT_TRUE(run.found) << seed << ' ' << ell;
      ASSERT_EQ(run.cost, run.trace.size());
      ASSERT_EQ(run.final_node, inst.treasure);
      // Forward minus backtrack equals trail size, which never goes negative.
      std::int64_t trail = 0;
      for (const Move& m : run.trace) {
        trail += m.kind == MoveKind::forward ? 1 : -1;
        ASSERT_GE(trail, 0);
      }
    }
  }
}

TEST(FindTreasure, GuardFiresAtMostOncePerNodeAndLevel) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = suite::random_graph_instance(seed, 40);
    const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, 0);
    const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, plan.encoded);
    std::set<std::pair<NodeId, std::size_t>> seen;
    std::map<NodeId, std::size_t> last_level;
    for (const GuardEvent& ev : run.guard_events) {
      ASSERT_TRUE(seen.emplace(ev.node, ev.level).second);
      if (last_level.count(ev.node)) {
        ASSERT_LT(ev.level, last_level[ev.node]);
      }
      last_level[ev.node] = ev.level;
    }
  }
}

TEST(FindTreasure, TreeGuardEventsHappenAtBfsDepth) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = suite::random_tree_instance(seed, 80);
    const auto depth = bfs_distances(inst.graph, inst.start);
    const std::uint64_t logsum = suite::logsum_of(inst);
    for (const std::uint64_t ell : {std::uint64_t{0}, logsum / 2, logsum}) {
      const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, ell);
      const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, plan.encoded);
      for (const GuardEvent& ev : run.guard_events) ASSERT_EQ(ev.level, depth[ev.node]);
    }
  }
}

TEST(FindTreasure, MatchesReferenceInterpreter) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Instance inst = suite::random_graph_instance(seed, 12);
    const Instance other = suite::random_graph_instance(seed + 1000, 12);
    const std::uint64_t logsum = suite::logsum_of(other);
    const AdvicePlan foreign = create_advice(other.graph, other.start, other.treasure, seed % (logsum + 1));
    const AdvicePlan own = create_advice(inst.graph, inst.start, inst.treasure, 0);
    for (const BitString& advice : {foreign.encoded, own.encoded}) {
      const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, advice);
      const naive::Result ref = naive::run(inst.graph, inst.start, inst.treasure, advice.to_string());
      ASSERT_EQ(run.found, ref.found) << seed;
      ASSERT_EQ(run.trace, ref.trace) << seed;
    }
  }
}

TEST(FindTreasure, MismatchedAdviceTerminates) {
  const Instance inst = suite::random_graph_instance(3, 20);
  // Sector codes that name ports beyond every degree.
  const BitString advice = concat(std::vector<BitString>(4, BitString::from_string("1111111")),
                                  BitString::minimal_binary(9));
  const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, advice);
  EXPECT_FALSE(run.found);
  EXPECT_EQ(run.cost, 0U);
  EXPECT_EQ(run.final_node, inst.start);
}

TEST(FindTreasure, MalformedAdvicePropagates) {
  const Instance inst = suite::random_graph_instance(3, 20);
  EXPECT_THROW(find_treasure(inst.graph, inst.start, inst.treasure, BitString::from_string("0010")), MalformedAdvice);
}

TEST(Replay, TraceIsConsistent) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = suite::random_graph_instance(seed, 40);
    const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, suite::logsum_of(inst) / 3);
    const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, plan.encoded);
    const ReplayReport r = replay(inst.graph, inst.start, run.trace);
    ASSERT_TRUE(r.consistent) << r.problem;
    ASSERT_EQ(r.final_node, inst.treasure);
    ASSERT_EQ(r.cost, run.cost);
  }
}

TEST(Replay, DetectsCorruptedPort) {
  Instance inst;
  HuntOutcome run;
  for (std::uint64_t seed = 1;; ++seed) {
    inst = suite::random_graph_instance(seed, 30);
    run = find_treasure(inst.graph, inst.start, inst.treasure, create_advice(inst.graph, inst.start, inst.treasure, 0).encoded);
    if (run.trace.size() >= 4) break;
  }
  auto bad = run.trace;
  const std::size_t idx = 2;
  bad[idx].port = bad[idx].port + 1 < inst.graph.degree(bad[idx].from) ? bad[idx].port + 1 : bad[idx].port - 1;
  if (inst.graph.degree(bad[idx].from) == 1) bad[idx].port = 1;
  const ReplayReport r = replay(inst.graph, inst.start, bad);
  EXPECT_FALSE(r.consistent);
  ASSERT_TRUE(r.bad_index.has_value());
  EXPECT_LE(*r.bad_index, idx + 1);
  EXPECT_GE(*r.bad_index, idx);
}

TEST(Replay, DetectsNonexistentPort) {
  const Instance inst = suite::random_graph_instance(5, 10);
  std::vector<Move> trace = {Move{inst.start, static_cast<Port>(inst.graph.degree(inst.start)), MoveKind::forward}};
  const ReplayReport r = replay(inst.graph, inst.start, trace);
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.bad_index, 0U);
}

TEST(StepMachine, HaltsAfterRootReturn) {
  // Single edge, treasure unreachable by the advised sector.
  GraphAssembler a;
  a.add_node(0);
  a.add_node(1);
  a.connect(0, 0, 1, 0);
  const auto g = std::move(a).build();
  FindTreasureAgent agent(concat(std::vector<BitString>{BitString{}}, BitString::minimal_binary(0)));
  const auto s1 = agent.next(LocalView{0, 1, std::nullopt});
  EXPECT_EQ(s1.kind, FindTreasureAgent::StepKind::forward);
  EXPECT_EQ(s1.port, 0U);
  const auto s2 = agent.next(LocalView{1, 1, Port{0}});
  EXPECT_EQ(s2.kind, FindTreasureAgent::StepKind::backtrack);
  const auto s3 = agent.next(LocalView{0, 1, std::nullopt});
  EXPECT_EQ(s3.kind, FindTreasureAgent::StepKind::halt);
  EXPECT_EQ(agent.next(LocalView{0, 1, std::nullopt}).kind, FindTreasureAgent::StepKind::halt);
}
