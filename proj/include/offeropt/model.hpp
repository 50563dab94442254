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

#ifndef OFFEROPT_MODEL_HPP_
#define OFFEROPT_MODEL_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Churn-aware revenue model for a single-offer-per-subscriber campaign.
//
// A subscriber with monthly top-up p and churn probability alpha yields an
// expected (1 - alpha) * p without an offer. An offer of value x is accepted
// with probability beta = 1 - exp(-gamma * x); an accepting subscriber stays
// and pays p - x. The expected revenue is therefore
//
//   f(x) = beta * (p - x) + (1 - beta) * (1 - alpha) * p
//        = (1 - alpha) * p + beta * (alpha * p - x).
namespace offeropt {

using SubscriberId = std::uint32_t;
using OfferIndex = std::uint32_t;

struct Subscriber {
  SubscriberId id = 0;
  double p = 0.0;      // monthly top-up
  double alpha = 0.0;  // churn probability
  double gamma = 0.0;  // acceptance rate, per currency unit

  bool operator==(const Subscriber&) const = default;
};

struct OfferType {
  double value = 0.0;  // denomination, > 0
  std::int64_t count = 0;
  std::optional<std::string> label;

  double total_value() const { return value * static_cast<double>(count); }

  bool operator==(const OfferType&) const = default;
};

struct OfferCatalog {
  std::vector<OfferType> offers;

  std::size_t size() const { return offers.size(); }
  std::int64_t total_count() const;  // K
  double total_value() const;        // W

  bool operator==(const OfferCatalog&) const = default;
};

struct AssignmentPair {
  SubscriberId subscriber = 0;
  OfferIndex offer = 0;

  bool operator==(const AssignmentPair&) const = default;
};

// Subscribers absent from `pairs` receive the zero offer.
struct Assignment {
  std::vector<AssignmentPair> pairs;
  double objective = 0.0;

  bool operator==(const Assignment&) const = default;
};

// Throws std::domain_error on negative, NaN or infinite input.
double acceptance_probability(double gamma, double x);

double expected_revenue(double x, double alpha, double gamma, double p);

namespace detail {
// Same arithmetic as expected_revenue, without parameter checks. Kernels use
// it after validating their whole input up front.
inline double expected_revenue_unchecked(double x, double alpha, double gamma,
                                         double p) {
  const double beta = -std::expm1(-gamma * x);
  return beta * (p - x) + (1.0 - beta) * (1.0 - alpha) * p;
}
}  // namespace detail

inline double expected_revenue(double x, const Subscriber& s) {
  return expected_revenue(x, s.alpha, s.gamma, s.p);
}

inline double baseline_revenue(const Subscriber& s) {
  return (1.0 - s.alpha) * s.p;
}

// Throws std::domain_error naming the offending field.
void validate(const Subscriber& s);
void validate(const OfferType& offer);
void validate(const OfferCatalog& catalog);
// Also checks that ids equal their positions.
void validate(std::span<const Subscriber> subscribers);

// Total expected revenue over all subscribers. Throws std::invalid_argument
// on dangling ids/indices or if the assignment breaks the one-offer or
// per-type count constraints.
double objective_value(const Assignment& assignment,
                       std::span<const Subscriber> subscribers,
                       const OfferCatalog& catalog);

// |a - b| <= tol * max(1, |a|, |b|)
bool nearly_equal(double a, double b, double tol = 1e-9);

}  // namespace offeropt

#endif  // OFFEROPT_MODEL_HPP_
