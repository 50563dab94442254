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

#include "offeropt/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "offeropt/rng.hpp"
#include "test_util.hpp"

namespace offeropt {
namespace {

using testing::catalog;
using testing::sub;

TEST(AcceptanceProbability, Examples) {
  EXPECT_EQ(acceptance_probability(0.1, 0.0), 0.0);
  EXPECT_EQ(acceptance_probability(0.0, 50.0), 0.0);
  EXPECT_NEAR(acceptance_probability(0.1, 10.0), 0.6321205588285577, 1e-15);
}

TEST(AcceptanceProbability, RejectsBadInput) {
  EXPECT_THROW(acceptance_probability(-0.1, 1.0), std::domain_error);
  EXPECT_THROW(acceptance_probability(0.1, -1.0), std::domain_error);
  EXPECT_THROW(acceptance_probability(std::nan(""), 1.0), std::domain_error);
}

TEST(AcceptanceProbability, MonotoneAndBounded) {
  Xoshiro256 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const double gamma = rng.uniform(0.0, 2.0);
    const double x = rng.uniform(0.0, 100.0);
    const double y = x + rng.uniform(0.0, 10.0);
    const double bx = acceptance_probability(gamma, x);
    EXPECT_GE(bx, 0.0);
    EXPECT_LE(bx, 1.0);
    EXPECT_LE(bx, acceptance_probability(gamma, y));
  }
}

TEST(ExpectedRevenue, Examples) {
  EXPECT_DOUBLE_EQ(expected_revenue(0.0, 0.2, 0.1, 100.0), 80.0);
  EXPECT_NEAR(expected_revenue(10.0, 0.5, 0.1, 100.0), 75.28482235314232, 1e-12);
  EXPECT_NEAR(expected_revenue(1.0, 0.5, 0.1, 100.0), 54.66296651623798, 1e-12);
}

TEST(ExpectedRevenue, MatchesAlternativeForm) {
  Xoshiro256 rng(5);
  for (int t = 0; t < 1000; ++t) {
    const double p = rng.uniform(0.0, 200.0);
    const double alpha = rng.next_double();
    const double gamma = rng.uniform(0.0, 1.0);
    const double x = rng.uniform(0.0, 100.0);
    const double beta = acceptance_probability(gamma, x);
    const double alt = (1.0 - alpha) * p + beta * (alpha * p - x);
    EXPECT_NEAR(expected_revenue(x, alpha, gamma, p), alt, 1e-9 * std::max(1.0, std::abs(alt)));
  }
}

TEST(ExpectedRevenue, ZeroOfferIsBaseline) {
  const Subscriber s = sub(0, 73.0, 0.3, 0.05);
  EXPECT_DOUBLE_EQ(expected_revenue(0.0, s), baseline_revenue(s));
}

TEST(ExpectedRevenue, RejectsBadParameters) {
  EXPECT_THROW(expected_revenue(1.0, 1.5, 0.1, 100.0), std::domain_error);
  EXPECT_THROW(expected_revenue(1.0, -0.1, 0.1, 100.0), std::domain_error);
  EXPECT_THROW(expected_revenue(1.0, 0.5, -0.1, 100.0), std::domain_error);
  EXPECT_THROW(expected_revenue(1.0, 0.5, 0.1, -1.0), std::domain_error);
  EXPECT_THROW(expected_revenue(-1.0, 0.5, 0.1, 100.0), std::domain_error);
  EXPECT_THROW(expected_revenue(std::numeric_limits<double>::infinity(), 0.5, 0.1, 100.0),
               std::domain_error);
}

TEST(Validate, SubscribersMustBeIndexed) {
  std::vector<Subscriber> subs = {sub(0, 10, 0.1, 0.1), sub(2, 10, 0.1, 0.1)};
  EXPECT_THROW(validate(std::span<const Subscriber>(subs)), std::domain_error);
  subs[1].id = 1;
  EXPECT_NO_THROW(validate(std::span<const Subscriber>(subs)));
}

TEST(Validate, Offers) {
  EXPECT_THROW(validate(OfferType{0.0, 1, std::nullopt}), std::domain_error);
  EXPECT_THROW(validate(OfferType{1.0, -1, std::nullopt}), std::domain_error);
  EXPECT_THROW(validate(OfferCatalog{}), std::domain_error);
  EXPECT_NO_THROW(validate(catalog({1.0, 2.0}, {0, 3})));
}

TEST(Catalog, Totals) {
  const OfferCatalog c = catalog({5.0, 10.0}, {3, 2});
  EXPECT_EQ(c.total_count(), 5);
  EXPECT_DOUBLE_EQ(c.total_value(), 35.0);
}

TEST(ObjectiveValue, EmptyAssignmentIsBaselineSum) {
  const std::vector<Subscriber> subs = {sub(0, 100, 0.2, 0.1), sub(1, 100, 0.5, 0.1)};
  EXPECT_DOUBLE_EQ(objective_value({}, subs, catalog({10.0}, {1})), 130.0);
}

TEST(ObjectiveValue, SinglePair) {
  const std::vector<Subscriber> subs = {sub(0, 100, 0.5, 0.1), sub(1, 100, 0.2, 0.1)};
  Assignment a;
  a.pairs = {{0, 0}};
  EXPECT_NEAR(objective_value(a, subs, catalog({10.0}, {1})), 155.28482235314232, 1e-12);
}

TEST(ObjectiveValue, RejectsViolations) {
  const std::vector<Subscriber> subs = {sub(0, 100, 0.5, 0.1), sub(1, 100, 0.2, 0.1)};
  const OfferCatalog c = catalog({10.0, 20.0}, {1, 1});
  Assignment twice;
  twice.pairs = {{0, 0}, {0, 1}};
  EXPECT_THROW(objective_value(twice, subs, c), std::invalid_argument);
  Assignment over;
  over.pairs = {{0, 0}, {1, 0}};
  EXPECT_THROW(objective_value(over, subs, c), std::invalid_argument);
  Assignment dangling;
  dangling.pairs = {{5, 0}};
  EXPECT_THROW(objective_value(dangling, subs, c), std::invalid_argument);
  dangling.pairs = {{0, 7}};
  EXPECT_THROW(objective_value(dangling, subs, c), std::invalid_argument);
}

TEST(NearlyEqual, RelativeAboveOne) {
  EXPECT_TRUE(nearly_equal(1e6, 1e6 + 1e-4));
  EXPECT_FALSE(nearly_equal(1e6, 1e6 + 1e-2));
  EXPECT_TRUE(nearly_equal(0.0, 1e-10));
  EXPECT_FALSE(nearly_equal(0.0, 1e-8));
}

}  // namespace
}  // namespace offeropt
