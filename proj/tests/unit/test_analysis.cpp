#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <sstream>

#include "advice_hunt/advice_hunt.hpp"
#include "support/suite.hpp"

using namespace advice_hunt;

TEST(Claim1, Examples) {
  const TupleCount a = count_tuples_bruteforce(2, 2);
  EXPECT_EQ(a.exact_count, 6U);
  EXPECT_EQ(a.bound, Rational(72));
  EXPECT_TRUE(a.within_bound());

  const TupleCount b = count_tuples_bruteforce(1, 0);
  EXPECT_EQ(b.exact_count, 1U);

  const TupleCount c = count_tuples_bruteforce(3, 4);
  EXPECT_EQ(c.exact_count, 35U);
  EXPECT_EQ(c.stars_and_bars, 35U);
  EXPECT_EQ(c.bound, Rational(2304));
}

TEST(Claim1, AgreesWithBinomialEverywhere) {
  for (std::size_t D = 1; D <= 5; ++D) {
    for (std::uint64_t M = 0; M <= 10; ++M) {
      const TupleCount t = count_tuples_bruteforce(D, M);
      ASSERT_TRUE(t.counts_agree()) << D << ' ' << M;
      ASSERT_TRUE(t.within_bound()) << D << ' ' << M;
    }
  }
  EXPECT_THROW(count_tuples_bruteforce(6, 2), BudgetExceeded);
}

TEST(Census, Examples) {
  EXPECT_EQ(caterpillar_census(2, 3).distinct, 9U);
  EXPECT_EQ(caterpillar_census(1, 2).distinct, 2U);
  const CensusResult c = caterpillar_census(3, 4);
  EXPECT_EQ(c.distinct, 64U);
  EXPECT_TRUE(c.holds());
  EXPECT_THROW(caterpillar_census(20, 5), BudgetExceeded);
}

TEST(MissDecomposition, FullAdviceHasNoMisses) {
  const Instance inst = make_caterpillar({3, 3, {2, 0, 3}});
  const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, suite::logsum_of(inst));
  const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, plan.encoded);
  const MissCheck c = miss_decomposition(run, 3);
  EXPECT_EQ(c.total_misses, 0U);
  EXPECT_EQ(c.cost, 3U);
  EXPECT_TRUE(c.holds());
}

TEST(MissDecomposition, NoAdviceOnSmallCaterpillar) {
  for_each_caterpillar_spec(2, 3, [](const CaterpillarSpec& spec) {
    const Instance inst = make_caterpillar(spec);
    const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, 0);
    const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, plan.encoded);
    ASSERT_TRUE(run.found);
    std::uint64_t backtracks = 0;
    for (const Move& m : run.trace) backtracks += m.kind == MoveKind::backtrack ? 1 : 0;
    const MissCheck c = miss_decomposition(run, 2);
    EXPECT_EQ(c.total_misses, backtracks);
    EXPECT_EQ(run.cost, 2 + 2 * backtracks);
    EXPECT_TRUE(c.holds());
    std::uint64_t from_agent = 0;
    for (const auto m : run.per_level_misses) from_agent += m;
    EXPECT_EQ(from_agent, c.total_misses);
  });
}

TEST(MissDecomposition, HandBuiltSingleMiss) {
  HuntOutcome run;
  run.trace = {Move{0, 0, MoveKind::forward}, Move{1, 0, MoveKind::backtrack}, Move{0, 1, MoveKind::forward},
               Move{2, 1, MoveKind::forward}};
  run.cost = run.trace.size();
  const MissCheck c = miss_decomposition(run, 2);
  EXPECT_EQ(c.misses, (std::vector<std::uint64_t>{1, 0}));
  EXPECT_EQ(c.expected_cost, 4U);
  EXPECT_TRUE(c.holds());
}

TEST(Bounds, FullAdviceIsDistance) {
  const Instance inst = suite::random_graph_instance(8, 30);
  const AdvicePlan plan = create_advice(inst.graph, inst.start, inst.treasure, suite::logsum_of(inst));
  const UpperBound b = certified_bound(plan, inst.graph.edge_count(), BoundKind::general);
  EXPECT_TRUE(b.admits(plan.distance()));
  EXPECT_FALSE(b.admits(plan.distance() + 1));
}

TEST(Bounds, ZeroBetaCollapses) {
  const UpperBound b = cost_bound(BoundKind::general, 3, 10, 0, 5, 0);
  EXPECT_TRUE(b.admits(480));
  EXPECT_FALSE(b.admits(481));
  EXPECT_EQ(b.to_decimal(), "480.000");
  const UpperBound t = cost_bound(BoundKind::tree, 3, 10, 0, 5, 0);
  EXPECT_TRUE(t.admits(160));
  EXPECT_FALSE(t.admits(161));
}

TEST(Bounds, RejectsFullAdvice) {
  EXPECT_THROW(cost_bound(BoundKind::general, 3, 10, 5, 5, 2), std::invalid_argument);
  EXPECT_THROW(cost_bound(BoundKind::general, 3, 0, 1, 5, 2), std::invalid_argument);
}

TEST(Bounds, NeverBelowHighPrecisionValue) {
  using Float = boost::multiprecision::cpp_bin_float_100;
  Rng rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t D = uniform_between(rng, 1, 40);
    const std::uint64_t e = uniform_between(rng, 1, 5000);
    const std::uint64_t logsum = uniform_between(rng, 1, 300);
    const std::uint64_t ell = uniform_below(rng, logsum);
    const std::uint64_t amax = uniform_between(rng, 0, 12);
    const auto kind = trial % 2 == 0 ? BoundKind::general : BoundKind::tree;
    const UpperBound b = cost_bound(kind, D, e, ell, logsum, amax);
    const Float beta = Float(ell) / Float(logsum);
    Float exact = 16 * pow(Float(e), 1 + beta) / pow(Float(2), Float(amax));
    if (kind == BoundKind::general) exact *= D;
    const Float reported = Float(b.numerator()) / pow(Float(2), Float(b.shift()));
    ASSERT_GE(reported, exact) << trial;
    ASSERT_LE(reported, exact * (1 + Float(1e-9))) << trial;
  }
}

TEST(Sweep, RowsAndCsv) {
  const Instance inst = suite::random_graph_instance(11, 60);
  const std::uint64_t logsum = suite::logsum_of(inst);
  std::vector<std::uint64_t> ells;
  for (std::uint64_t l = 0; l < logsum; ++l) ells.push_back(l);
  const auto rows = sweep(inst.graph, inst.start, inst.treasure, ells, 4);
  ASSERT_EQ(rows.size(), logsum + 1);
  for (const SweepRow& r : rows) {
    EXPECT_TRUE(r.found);
    EXPECT_TRUE(r.holds);
  }
  EXPECT_EQ(rows.back().ell, logsum);
  EXPECT_EQ(rows.back().cost, rows.back().distance);
  const auto serial = sweep(inst.graph, inst.start, inst.treasure, ells, 1);
  std::ostringstream a, b;
  write_sweep_csv(a, rows);
  write_sweep_csv(b, serial);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), kSweepHeader);
  EXPECT_THROW(sweep(inst.graph, inst.start, inst.treasure, {logsum + 1}), std::out_of_range);
}

TEST(Bounds, AtMostIsTheOtherDirection) {
  const UpperBound b = cost_bound(BoundKind::tree, 1, 10, 0, 5, 0);  // exactly 160
  EXPECT_TRUE(b.at_most(160));
  EXPECT_FALSE(b.at_most(159));
  EXPECT_TRUE(b.admits(160));
}
