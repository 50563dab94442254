// Copyright 2026 The offeropt Authors
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

#include "offeropt/greedy.hpp"

#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "offeropt/generator.hpp"
#include "offeropt/oracle.hpp"
#include "offeropt/rng.hpp"
#include "test_util.hpp"

namespace offeropt {
namespace {

using testing::catalog;
using testing::sub;

Instance random_instance(std::int64_t n, std::int64_t k, std::uint64_t seed,
                         double coverage = 0.5) {
  GeneratorConfig c;
  c.n = n;
  c.k = k;
  c.seed = seed;
  c.coverage = coverage;
  return generate_instance(c);
}

double baseline_sum(const std::vector<Subscriber>& subs) {
  double total = 0.0;
  for (const auto& s : subs) total += baseline_revenue(s);
  return total;
}

TEST(GreedyOffer, NoOffersGivesBaseline) {
  const std::vector<Subscriber> subs = {sub(0, 100, 0.2, 0.1), sub(1, 50, 0.5, 0.1),
                                        sub(2, 30, 0.1, 0.2)};
  const GreedyResult r = greedy_offer(subs, catalog({5, 10}, {0, 0}));
  EXPECT_TRUE(r.assignment.pairs.empty());
  EXPECT_DOUBLE_EQ(r.assignment.objective, baseline_sum(subs));
}

TEST(GreedyOffer, PicksTheLargerRevenueOffer) {
  const std::vector<Subscriber> subs = {sub(0, 100, 0.5, 0.1)};
  const GreedyResult r = greedy_offer(subs, catalog({1, 10}, {1, 1}));
  ASSERT_EQ(r.assignment.pairs.size(), 1u);
  EXPECT_EQ(r.assignment.pairs[0], (AssignmentPair{0, 1}));
  EXPECT_NEAR(r.assignment.objective, 75.28482235314232, 1e-12);
  ASSERT_EQ(r.trace.steps.size(), 1u);
  EXPECT_NEAR(r.trace.steps[0].revenue, 75.28482235314232, 1e-12);
}

// Objectives of `samples` random feasible assignments (each subscriber draws
// the zero offer or one of the k types; draws exceeding a count are redrawn).
std::vector<double> sample_objectives(const Instance& inst, int samples, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  const auto k = static_cast<std::int64_t>(inst.catalog.size());
  std::vector<double> out;
  while (static_cast<int>(out.size()) < samples) {
    std::vector<std::int64_t> left;
    for (const auto& o : inst.catalog.offers) left.push_back(o.count);
    Assignment a;
    bool ok = true;
    for (const auto& s : inst.subscribers) {
      const auto choice = rng.uniform_int(0, k);
      if (choice == 0) continue;
      if (--left[choice - 1] < 0) ok = false;
      a.pairs.push_back({s.id, static_cast<OfferIndex>(choice - 1)});
    }
    if (ok) out.push_back(objective_value(a, inst.subscribers, inst.catalog));
  }
  return out;
}

TEST(GreedyOffer, BeatsRandomAssignmentsWithoutScarcity) {
  GeneratorConfig g;
  g.n = 6;
  g.k = 3;
  g.seed = 2024;
  g.p_range = {80, 100};
  g.alpha_range = {0.5, 0.6};
  Instance inst = generate_instance(g);
  for (auto& o : inst.catalog.offers) o.count = 6;
  const double greedy = greedy_offer(inst.subscribers, inst.catalog).assignment.objective;
  for (double sample : sample_objectives(inst, 1000, 99)) EXPECT_GE(greedy + 1e-9, sample);
}

// With one unit of each type for six subscribers, ranking pairs by absolute
// revenue is not optimal: random sampling finds better assignments, and the
// exhaustive optimum dominates both.
TEST(GreedyOffer, ScarceUnitCountsAreBeatenBySampling) {
  const Instance inst = random_instance(6, 3, 2024, 0.5);
  ASSERT_EQ(inst.catalog.total_count(), 3);
  const double greedy = greedy_offer(inst.subscribers, inst.catalog).assignment.objective;
  const double best = brute_force_oop(inst.subscribers, inst.catalog).assignment.objective;
  const auto samples = sample_objectives(inst, 1000, 99);
  const double best_sample = *std::max_element(samples.begin(), samples.end());
  EXPECT_LE(best_sample, best + 1e-9);
  EXPECT_LE(greedy, best + 1e-9);
  EXPECT_GT(best_sample, greedy);
  EXPECT_NEAR(greedy, 152.17855650425841, 1e-9);
}

TEST(GreedyOffer, AssignsWhileOffersAndSubscribersRemain) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = random_instance(40, 4, s, 0.3 + 0.01 * static_cast<double>(s));
    const GreedyResult r = greedy_offer(inst.subscribers, inst.catalog);
    const auto expected = std::min<std::int64_t>(40, inst.catalog.total_count());
    EXPECT_EQ(static_cast<std::int64_t>(r.assignment.pairs.size()), expected);
    EXPECT_EQ(r.trace.assigned_count, r.assignment.pairs.size());
    EXPECT_EQ(r.trace.skipped_count, 0u);
  }
}

TEST(GreedyOffer, TraceIsNonIncreasingAndFeasible) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Xoshiro256 rng(s);
    const Instance inst =
        random_instance(rng.uniform_int(1, 150), rng.uniform_int(1, 8), s, rng.uniform(0.05, 1.0));
    for (auto sel : {RootSelection::kLinearScan, RootSelection::kRootHeap}) {
      GreedyOptions o;
      o.root_selection = sel;
      const GreedyResult r = greedy_offer(inst.subscribers, inst.catalog, o);
      for (std::size_t t = 1; t < r.trace.steps.size(); ++t) {
        ASSERT_LE(r.trace.steps[t].revenue, r.trace.steps[t - 1].revenue + 1e-9);
      }
      const VerificationReport v = verify_assignment(r.assignment, inst.subscribers, inst.catalog);
      EXPECT_TRUE(v.passed()) << ::testing::PrintToString(v.failed_names());
    }
  }
}

TEST(GreedyOffer, RootSelectionsAgree) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Instance inst = random_instance(200, 7, s);
    GreedyOptions heap;
    heap.root_selection = RootSelection::kRootHeap;
    const GreedyResult a = greedy_offer(inst.subscribers, inst.catalog);
    const GreedyResult b = greedy_offer(inst.subscribers, inst.catalog, heap);
    EXPECT_EQ(a.assignment, b.assignment);
    EXPECT_EQ(a.trace, b.trace);
  }
}

TEST(GreedyOffer, RemainingOffersTrackCounts) {
  const Instance inst = random_instance(30, 3, 8, 0.9);
  const GreedyResult r = greedy_offer(inst.subscribers, inst.catalog);
  std::vector<std::int64_t> used(3, 0);
  for (const auto& p : r.assignment.pairs) ++used[p.offer];
  ASSERT_EQ(r.trace.remaining_offers.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(r.trace.remaining_offers[j], inst.catalog.offers[j].count - used[j]);
  }
}

TEST(GreedyOffer, ScarceCounterexampleIsSuboptimal) {
  const std::vector<Subscriber> subs = {sub(0, 100, 0.05, 0.1), sub(1, 20, 0.05, 0.1)};
  const GreedyResult r = greedy_offer(subs, catalog({1, 10}, {1, 1}));
  EXPECT_NEAR(r.assignment.objective, 108.69156529839914, 1e-9);
}

TEST(GreedyOffer, NoHarmSkipsHarmfulOffers) {
  // alpha * p = 5 < delta = 10: accepting the offer loses revenue.
  const std::vector<Subscriber> subs = {sub(0, 100, 0.05, 0.1), sub(1, 100, 0.5, 0.1)};
  const OfferCatalog c = catalog({10}, {2});
  const GreedyResult faithful = greedy_offer(subs, c);
  EXPECT_EQ(faithful.assignment.pairs.size(), 2u);
  GreedyOptions o;
  o.no_harm = true;
  const GreedyResult guarded = greedy_offer(subs, c, o);
  ASSERT_EQ(guarded.assignment.pairs.size(), 1u);
  EXPECT_EQ(guarded.assignment.pairs[0].subscriber, 1u);
  EXPECT_EQ(guarded.trace.skipped_count, 1u);
  EXPECT_GT(guarded.assignment.objective, faithful.assignment.objective);
}

TEST(GreedyOffer, PrebuiltHeapSetMustMatch) {
  const Instance inst = random_instance(10, 2, 1);
  HeapSet h = HeapSet::build(inst.subscribers, inst.catalog);
  const OfferCatalog other = catalog({1, 2, 3}, {1, 1, 1});
  EXPECT_THROW(greedy_offer(std::move(h), inst.subscribers, other), std::invalid_argument);
}

TEST(VerifyAssignment, FlagsConstructedViolations) {
  const std::vector<Subscriber> subs = {sub(0, 100, 0.5, 0.1), sub(1, 100, 0.2, 0.1),
                                        sub(2, 100, 0.2, 0.1)};
  const OfferCatalog c = catalog({10, 20}, {1, 1});

  Assignment twice;
  twice.pairs = {{0, 0}, {0, 1}};
  auto v = verify_assignment(twice, subs, c);
  EXPECT_FALSE(v.passed());
  EXPECT_FALSE(v.find("one_offer_per_subscriber")->passed);

  Assignment over;
  over.pairs = {{0, 0}, {1, 0}};
  v = verify_assignment(over, subs, c);
  EXPECT_FALSE(v.find("offer_counts")->passed);
  EXPECT_TRUE(v.find("one_offer_per_subscriber")->passed);

  Assignment dangling;
  dangling.pairs = {{9, 0}};
  v = verify_assignment(dangling, subs, c);
  EXPECT_FALSE(v.find("references")->passed);

  Assignment wrong_objective;
  wrong_objective.pairs = {{0, 0}};
  wrong_objective.objective = 1.0;
  v = verify_assignment(wrong_objective, subs, c);
  EXPECT_FALSE(v.find("objective")->passed);
  EXPECT_EQ(v.failed_names(), std::vector<std::string>{"objective"});
}

TEST(VerifyAssignment, AcceptsGreedyOutput) {
  const Instance inst = random_instance(100, 5, 3);
  const GreedyResult r = greedy_offer(inst.subscribers, inst.catalog);
  const VerificationReport v = verify_assignment(r.assignment, inst.subscribers, inst.catalog);
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.checks.size(), 7u);
  EXPECT_NEAR(v.recomputed_objective, r.assignment.objective, 1e-9);
}

}  // namespace
}  // namespace offeropt
