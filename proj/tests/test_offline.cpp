// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "knapsub/knapsub.hpp"
#include "support/instances.hpp"

namespace knapsub {
namespace {

using testing::random_case;
using testing::reference_opt;
using testing::tight_example;

TEST(Greedy, TightExamplePicksDensestItemOnly) {
  const auto c = tight_example();
  QueryLedger ledger;
  const auto r = greedy(c.instance, c.objective, ledger);
  EXPECT_EQ(r.report.solution.ids, (IdSet{2}));
  EXPECT_NEAR(r.report.solution.value, 0.6, 1e-12);
  ASSERT_TRUE(r.report.trace.has_value());
  EXPECT_EQ(r.report.trace->order, (IdSet{2}));
}

TEST(Greedy, SingleElement) {
  const ModularObjective f({0.4});
  const Instance instance({{0, 1.0}}, 1.0);
  QueryLedger ledger;
  EXPECT_EQ(greedy(instance, f, ledger).report.solution.ids, (IdSet{0}));
}

TEST(Greedy, ModularUnitCostsIsExact) {
  const ModularObjective f({3.0, 2.0, 1.0});
  const Instance instance({{0, 1.0}, {1, 1.0}, {2, 1.0}}, 2.0);
  QueryLedger ledger;
  const auto r = greedy(instance, f, ledger);
  EXPECT_EQ(r.report.solution.ids, (IdSet{0, 1}));
  EXPECT_DOUBLE_EQ(r.report.solution.value, 5.0);
}

TEST(Greedy, QueriesWithinSweepBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_case(seed);
    QueryLedger ledger;
    const auto r = greedy(c.instance, c.objective, ledger);
    const std::uint64_t n = c.instance.size();
    // f(∅) plus one sweep of at most n candidates per pick.
    EXPECT_LE(r.report.queries, 1 + c.instance.k_tilde() * n) << "seed " << seed;
    EXPECT_EQ(r.report.queries, ledger.query_count());
  }
}

TEST(GreedyOrMax, TightExample) {
  const auto c = tight_example();
  QueryLedger ledger;
  EXPECT_NEAR(greedy_or_max(c.instance, c.objective, ledger).report.solution.value, 0.6,
              1e-12);
}

TEST(GreedyOrMax, BigSingletonBeatsGreedy) {
  // Two unit items of density 1 fill the knapsack before the value-9 item
  // of density 0.9 can be taken.
  const ModularObjective f({9.0, 1.0, 1.0});
  const Instance instance({{0, 10.0}, {1, 1.0}, {2, 1.0}}, 10.0);
  QueryLedger g_ledger;
  QueryLedger m_ledger;
  EXPECT_DOUBLE_EQ(greedy(instance, f, g_ledger).report.solution.value, 2.0);
  const auto r = greedy_or_max(instance, f, m_ledger);
  EXPECT_EQ(r.report.solution.ids, (IdSet{0}));
  EXPECT_DOUBLE_EQ(r.report.solution.value, brute_force_opt(instance, f).value);
}

TEST(GreedyOrMax, EmptyInstanceReturnsBaseSet) {
  const ModularObjective f({0.3});
  const Instance instance(std::vector<Element>{}, 1.0, {0});
  QueryLedger ledger;
  const auto r = greedy_or_max(instance, f, ledger);
  EXPECT_TRUE(r.report.solution.ids.empty());
  EXPECT_DOUBLE_EQ(r.report.solution.value, 0.3);
}

TEST(GreedyPlusMax, TightExampleIsHalfPlusEpsilon) {
  const auto c = tight_example();
  QueryLedger ledger;
  const auto r = greedy_plus_max(c.instance, c.objective, ledger);
  EXPECT_NEAR(r.report.solution.value, 0.6, 1e-12);
  ASSERT_FALSE(r.augmentations.empty());
  EXPECT_EQ(r.augmentations.front().prefix_index, 0u);
}

TEST(GreedyPlusMax, ValueIsBestAugmentationOrGreedy) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto c = random_case(seed);
    QueryLedger ledger;
    const auto r = greedy_plus_max(c.instance, c.objective, ledger);
    double best = r.report.trace->steps.back().value;
    for (const Augmentation& a : r.augmentations) best = std::max(best, a.value);
    EXPECT_DOUBLE_EQ(r.report.solution.value, best) << "seed " << seed;
    QueryLedger check(false);
    EXPECT_NEAR(evaluate(c.instance, c.objective, r.report.solution.ids, check),
                r.report.solution.value, 1e-12);
    EXPECT_TRUE(c.instance.feasible(r.report.solution.ids));
  }
}

TEST(GreedyPlusMax, EqualsGreedyWhenGreedyIsOptimal) {
  const ModularObjective f({3.0, 2.0, 1.0});
  const Instance instance({{0, 1.0}, {1, 1.0}, {2, 1.0}}, 2.0);
  QueryLedger a;
  QueryLedger b;
  EXPECT_DOUBLE_EQ(greedy_plus_max(instance, f, a).report.solution.value,
                   greedy(instance, f, b).report.solution.value);
}

TEST(GreedyPlusMax, AtLeastHalfOfOptimum) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto c = random_case(seed);
    QueryLedger ledger;
    const double value = greedy_plus_max(c.instance, c.objective, ledger).report.solution.value;
    EXPECT_GE(value, 0.5 * reference_opt(c.instance, c.objective) - 1e-9) << "seed " << seed;
  }
}

TEST(OfflineProperty, DominanceChain) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto c = random_case(seed);
    QueryLedger a;
    QueryLedger b;
    QueryLedger d;
    const double g = greedy(c.instance, c.objective, a).report.solution.value;
    const double gm = greedy_or_max(c.instance, c.objective, b).report.solution.value;
    const double gpm = greedy_plus_max(c.instance, c.objective, d).report.solution.value;
    EXPECT_GE(gm, g) << "seed " << seed;
    EXPECT_GE(gpm, gm) << "seed " << seed;
  }
}

TEST(OfflineProperty, QueryParity) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_case(seed);
    QueryLedger a;
    QueryLedger b;
    QueryLedger d;
    greedy(c.instance, c.objective, a);
    greedy_or_max(c.instance, c.objective, b);
    greedy_plus_max(c.instance, c.objective, d);
    EXPECT_EQ(a.query_count(), b.query_count()) << "seed " << seed;
    EXPECT_EQ(a.query_count(), d.query_count()) << "seed " << seed;
  }
}

TEST(OfflineProperty, LedgerExactAcrossWorkerCounts) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto c = random_case(seed);
    QueryLedger one;
    QueryLedger many;
    const auto a = greedy_plus_max(c.instance, c.objective, one, {1});
    const auto b = greedy_plus_max(c.instance, c.objective, many, {4});
    EXPECT_EQ(one.query_count(), many.query_count()) << "seed " << seed;
    EXPECT_EQ(a.report.solution.ids, b.report.solution.ids) << "seed " << seed;
    EXPECT_EQ(a.report.solution.value, b.report.solution.value) << "seed " << seed;
  }
}

TEST(PartialEnum, DepthOneFindsTightOptimum) {
  const auto c = tight_example();
  QueryLedger ledger;
  const auto r = partial_enum_greedy(c.instance, c.objective, 1, ledger);
  EXPECT_DOUBLE_EQ(r.report.solution.value, 1.0);
  EXPECT_EQ(r.report.solution.ids.size(), 2u);
}

TEST(PartialEnum, DepthZeroIsGreedy) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto c = random_case(seed);
    QueryLedger a;
    QueryLedger b;
    EXPECT_EQ(partial_enum_greedy(c.instance, c.objective, 0, a).report.solution.value,
              greedy(c.instance, c.objective, b).report.solution.value)
        << "seed " << seed;
  }
}

TEST(PartialEnum, DepthTwoNeverExceedsOptimum) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto c = random_case(seed);
    QueryLedger ledger;
    const double value =
        partial_enum_greedy(c.instance, c.objective, 2, ledger).report.solution.value;
    EXPECT_LE(value, reference_opt(c.instance, c.objective) + 1e-9) << "seed " << seed;
  }
}

TEST(PartialEnum, BudgetCheckedUpFront) {
  const auto c = random_case(4);
  QueryLedger ledger(true, 10);
  EXPECT_THROW(partial_enum_greedy(c.instance, c.objective, 2, ledger), BudgetExceeded);
  EXPECT_EQ(ledger.query_count(), 0u);
  QueryLedger other;
  EXPECT_THROW(partial_enum_greedy(c.instance, c.objective, 4, other), InvalidArgument);
}

}  // namespace
}  // namespace knapsub
