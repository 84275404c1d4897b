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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "knapsub/knapsub.hpp"
#include "support/instances.hpp"
#include "support/trace_checks.hpp"

namespace knapsub {
namespace {

using testing::random_case;
using testing::reference_opt;
using testing::tight_example;

// The tight instance streamed with the heavy item first, so the first
// threshold pass takes it before either unit item is seen.
StreamSource heavy_first(const Instance& instance) {
  return StreamSource({{2, instance.cost_of(2)}, {0, 1.0}, {1, 1.0}});
}

TEST(ThresholdSchedule, GeometricDescentBetweenBounds) {
  const ThresholdSchedule s(1.0, 1.0, 0.5, 2.0);
  EXPECT_DOUBLE_EQ(s.initial(), 0.5);
  EXPECT_DOUBLE_EQ(s.stop(), 0.25);
  const std::vector<double> taus = s.thresholds();
  ASSERT_EQ(taus.size(), 2u);
  EXPECT_DOUBLE_EQ(taus[1], 0.5 / 1.5);
  EXPECT_EQ(ThresholdSchedule::pass_bound(1.0, 0.5), 2);
}

TEST(ThresholdSchedule, PassCountMatchesSpannedRatio) {
  // The schedule spans λ/(αK) down to λ/(2K): a factor 2/α = 12 for α = 1/6,
  // which takes ⌈ln 12 / ln 1.1⌉ = 27 steps of 1.1.
  EXPECT_EQ(ThresholdSchedule::pass_bound(1.0 / 6.0, 0.1), 27);
  for (double lambda : {0.01, 0.3, 1.0, 7.5, 120.0}) {
    for (double capacity : {1.0, 3.0, 8.5}) {
      const ThresholdSchedule s(lambda, 1.0 / 6.0, 0.1, capacity);
      EXPECT_LE(static_cast<int>(s.thresholds().size()),
                ThresholdSchedule::pass_bound(1.0 / 6.0, 0.1));
    }
  }
}

TEST(ThresholdSchedule, RejectsBadParameters) {
  EXPECT_THROW(ThresholdSchedule(0.0, 1.0, 0.1, 2.0), InvalidLambda);
  EXPECT_THROW(ThresholdSchedule(-1.0, 1.0, 0.1, 2.0), InvalidLambda);
  EXPECT_THROW(ThresholdSchedule(1.0, 0.0, 0.1, 2.0), InvalidArgument);
  EXPECT_THROW(ThresholdSchedule(1.0, 1.0, 0.0, 2.0), InvalidArgument);
}

TEST(StreamSource, CountsFullTraversals) {
  StreamSource s({{0, 1.0}, {1, 2.0}});
  int seen = 0;
  s.pass([&](const Element&) { ++seen; });
  s.pass([&](const Element&) { ++seen; });
  EXPECT_EQ(seen, 4);
  EXPECT_EQ(s.pass_count(), 2);
}

TEST(StreamSource, FileBackedReplayMatchesMemory) {
  const auto path = std::filesystem::temp_directory_path() / "knapsub_stream_test.tsv";
  const std::vector<Element> elements = {{4, 1.0}, {2, 1.25}, {9, 3.0000000000000004}};
  StreamSource::write_file(path, elements);
  {
    std::ofstream append(path, std::ios::app);
    append << "# trailing comment\n\n";
  }
  StreamSource s = StreamSource::from_file(path);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<Element> got;
    s.pass([&](const Element& e) { got.push_back(e); });
    ASSERT_EQ(got.size(), elements.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].id, elements[i].id);
      EXPECT_EQ(got[i].cost, elements[i].cost);
    }
  }
  EXPECT_EQ(s.pass_count(), 2);
  std::filesystem::remove(path);
}

TEST(StreamSource, ParseErrorsCarryLineNumbers) {
  EXPECT_THROW(StreamSource::parse_line("12 3.0", 4), ParseError);
  EXPECT_THROW(StreamSource::parse_line("x\t3.0", 4), ParseError);
  EXPECT_THROW(StreamSource::parse_line("1\tabc", 4), ParseError);
  try {
    StreamSource::parse_line("1\tabc", 7);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
  EXPECT_THROW(StreamSource::from_file("/nonexistent/stream.tsv"), InvalidArgument);
}

TEST(SievePlusMax, TightExampleHandTrace) {
  const auto c = tight_example();
  StreamSource stream = heavy_first(c.instance);
  QueryLedger ledger;
  const AlgoReport r = sieve_plus_max(stream, c.instance, c.objective, ledger, {1.0, 1.0, 0.5});
  EXPECT_NEAR(r.solution.value, 0.6, 1e-12);
  // Two thresholds (0.5, 1/3) plus the augmentation pass.
  EXPECT_EQ(r.passes, 3);
  EXPECT_EQ(stream.pass_count(), 3);
}

TEST(SievePlusMax, TightExampleInIdOrderTakesBothUnitItems) {
  // With ρ ≥ τ acceptance the unit items clear τ = 0.5 when they come first.
  const auto c = tight_example();
  StreamSource stream = StreamSource::from_instance(c.instance);
  QueryLedger ledger;
  const AlgoReport r = sieve_plus_max(stream, c.instance, c.objective, ledger, {1.0, 1.0, 0.5});
  EXPECT_DOUBLE_EQ(r.solution.value, 1.0);
}

TEST(SievePlusMax, SingleElementNeedsTwoPasses) {
  const ModularObjective f({0.8});
  const Instance instance({{0, 1.0}}, 2.0);
  StreamSource stream = StreamSource::from_instance(instance);
  QueryLedger ledger;
  const AlgoReport r = sieve_plus_max(stream, instance, f, ledger, {0.8, 1.0, 0.1});
  EXPECT_EQ(r.solution.ids, (IdSet{0}));
  EXPECT_GE(r.passes, 2);
}

TEST(SievePlusMax, RejectsNonPositiveLambda) {
  const auto c = tight_example();
  StreamSource stream = StreamSource::from_instance(c.instance);
  QueryLedger ledger;
  EXPECT_THROW(sieve_plus_max(stream, c.instance, c.objective, ledger, {0.0, 1.0, 0.1}),
               InvalidLambda);
}

TEST(SievePlusMax, ExactLambdaMeetsGuarantee) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto c = random_case(seed);
    const double opt = reference_opt(c.instance, c.objective);
    if (!(opt > 0.0)) continue;
    StreamSource stream = StreamSource::from_instance(c.instance);
    QueryLedger ledger;
    const AlgoReport r = sieve_plus_max(stream, c.instance, c.objective, ledger, {opt, 1.0, 0.1});
    EXPECT_GE(r.solution.value, 0.4 * opt - 1e-9) << "seed " << seed;
    EXPECT_LE(r.peak_retained, 2 * c.instance.k_tilde()) << "seed " << seed;
    EXPECT_EQ(ledger.infeasible_query_count(), 0u);
  }
}

TEST(Sieve, TightExampleBaselines) {
  const auto c = tight_example();
  QueryLedger a;
  QueryLedger b;
  StreamSource s1 = heavy_first(c.instance);
  StreamSource s2 = heavy_first(c.instance);
  EXPECT_NEAR(sieve(s1, c.instance, c.objective, a, {1.0, 1.0, 0.5}).solution.value, 0.6, 1e-12);
  EXPECT_NEAR(sieve_or_max(s2, c.instance, c.objective, b, {1.0, 1.0, 0.5}).solution.value, 0.6,
              1e-12);
}

TEST(Sieve, BestSingletonCanBeatThresholdSet) {
  const ModularObjective f({9.0, 1.0, 1.0});
  const Instance instance({{0, 10.0}, {1, 1.0}, {2, 1.0}}, 10.0);
  const StreamingParams params{9.0, 1.0, 0.1};
  auto unit_items_first = [&] { return StreamSource({{1, 1.0}, {2, 1.0}, {0, 10.0}}); };
  QueryLedger a;
  QueryLedger b;
  StreamSource s1 = unit_items_first();
  StreamSource s2 = unit_items_first();
  EXPECT_DOUBLE_EQ(sieve(s1, instance, f, a, params).solution.value, 2.0);
  EXPECT_DOUBLE_EQ(sieve_or_max(s2, instance, f, b, params).solution.value, 9.0);
}

TEST(Sieve, EmptyStreamReturnsBaseSet) {
  const ModularObjective f({0.4});
  const Instance instance(std::vector<Element>{}, 1.0, {0});
  StreamSource stream = StreamSource::from_instance(instance);
  QueryLedger ledger;
  const AlgoReport r = sieve(stream, instance, f, ledger, {1.0, 1.0, 0.1});
  EXPECT_TRUE(r.solution.ids.empty());
  EXPECT_DOUBLE_EQ(r.solution.value, 0.4);
}

TEST(StreamingProperty, DominanceChain) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto c = random_case(seed);
    const double opt = reference_opt(c.instance, c.objective);
    if (!(opt > 0.0)) continue;
    const StreamingParams params{opt, 1.0, 0.1};
    QueryLedger a;
    QueryLedger b;
    QueryLedger d;
    StreamSource s1 = StreamSource::from_instance(c.instance);
    StreamSource s2 = StreamSource::from_instance(c.instance);
    StreamSource s3 = StreamSource::from_instance(c.instance);
    const double v1 = sieve(s1, c.instance, c.objective, a, params).solution.value;
    const double v2 = sieve_or_max(s2, c.instance, c.objective, b, params).solution.value;
    const double v3 = sieve_plus_max(s3, c.instance, c.objective, d, params).solution.value;
    EXPECT_GE(v2, v1) << "seed " << seed;
    EXPECT_GE(v3, v2) << "seed " << seed;
  }
}

TEST(StreamingProperty, ThresholdTraceInequality) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto c = random_case(seed);
    const Solution opt = brute_force_opt(c.instance, c.objective);
    auto summary = testing::summarize_opt(c.instance, opt);
    if (!summary) continue;
    // Thresholds are set relative to K, so costs are normalized by K here;
    // every OPT element still fits while x <= 1 - c(o1)/K.
    summary->cost = c.instance.capacity();
    StreamSource stream = StreamSource::from_instance(c.instance);
    QueryLedger ledger;
    const AlgoReport r =
        sieve(stream, c.instance, c.objective, ledger, {opt.value, 1.0, 0.1});
    const auto check = testing::check_exponential_bound(*r.trace, *summary, 1.1);
    EXPECT_TRUE(check.ok) << "seed " << seed << ": " << check.failure;
  }
}

TEST(EstimateLambda, SingleElementIsExact) {
  const ModularObjective f({0.8});
  const Instance instance({{0, 1.0}}, 2.0);
  StreamSource stream = StreamSource::from_instance(instance);
  QueryLedger ledger;
  const LambdaEstimate est = estimate_lambda(stream, instance, f, ledger);
  EXPECT_DOUBLE_EQ(est.lambda, 0.8);
  EXPECT_DOUBLE_EQ(est.alpha, 1.0 / 6.0);
  EXPECT_EQ(est.passes, 1);
}

TEST(EstimateLambda, TightExampleWithinGuarantee) {
  const auto c = tight_example();
  StreamSource stream = StreamSource::from_instance(c.instance);
  QueryLedger ledger;
  const LambdaEstimate est = estimate_lambda(stream, c.instance, c.objective, ledger);
  EXPECT_GE(est.lambda, 1.0 / 6.0);
  EXPECT_LE(est.lambda, 1.0);
}

TEST(EstimateLambda, RandomInstancesWithinGuarantee) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto c = random_case(seed);
    const double opt = reference_opt(c.instance, c.objective);
    StreamSource stream = StreamSource::from_instance(c.instance);
    QueryLedger ledger;
    const LambdaEstimate est = estimate_lambda(stream, c.instance, c.objective, ledger);
    EXPECT_GE(est.lambda, est.alpha * opt - 1e-9) << "seed " << seed;
    EXPECT_LE(est.lambda, opt + 1e-9) << "seed " << seed;
    EXPECT_EQ(est.passes, 1);
    EXPECT_LE(est.peak_retained, est.retained_cap) << "seed " << seed;
    EXPECT_EQ(ledger.infeasible_query_count(), 0u);
  }
}

TEST(EstimateLambda, RejectsSlackOutsideRange) {
  const auto c = tight_example();
  StreamSource stream = StreamSource::from_instance(c.instance);
  QueryLedger ledger;
  EXPECT_THROW(estimate_lambda(stream, c.instance, c.objective, ledger, 0.5), InvalidArgument);
}

TEST(SievePlusMaxEstimated, SumsPassesOfBothStages) {
  const auto c = random_case(6);
  StreamSource stream = StreamSource::from_instance(c.instance);
  QueryLedger ledger;
  const AlgoReport r = sieve_plus_max_estimated(stream, c.instance, c.objective, ledger, 0.1);
  EXPECT_EQ(r.passes, stream.pass_count());
  EXPECT_EQ(r.queries, ledger.query_count());
}

}  // namespace
}  // namespace knapsub
