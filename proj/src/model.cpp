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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace offeropt {
namespace {

void require_finite_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::domain_error(std::string(name) +
                            " must be finite and non-negative, got " +
                            std::to_string(v));
  }
}

void check_model_params(double alpha, double gamma, double p) {
  require_finite_nonnegative(p, "p");
  require_finite_nonnegative(gamma, "gamma");
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw std::domain_error("alpha must lie in [0, 1], got " +
                            std::to_string(alpha));
  }
}

}  // namespace

std::int64_t OfferCatalog::total_count() const {
  std::int64_t total = 0;
  for (const auto& o : offers) total += o.count;
  return total;
}

double OfferCatalog::total_value() const {
  double total = 0.0;
  for (const auto& o : offers) total += o.total_value();
  return total;
}

double acceptance_probability(double gamma, double x) {
  require_finite_nonnegative(gamma, "gamma");
  require_finite_nonnegative(x, "x");
  // -expm1(-y) == 1 - exp(-y), accurate for small y.
  return -std::expm1(-gamma * x);
}

double expected_revenue(double x, double alpha, double gamma, double p) {
  check_model_params(alpha, gamma, p);
  require_finite_nonnegative(x, "x");
  return detail::expected_revenue_unchecked(x, alpha, gamma, p);
}

void validate(const Subscriber& s) { check_model_params(s.alpha, s.gamma, s.p); }

void validate(const OfferType& offer) {
  if (!std::isfinite(offer.value) || offer.value <= 0.0) {
    throw std::domain_error("offer value must be finite and positive, got " +
                            std::to_string(offer.value));
  }
  if (offer.count < 0) {
    throw std::domain_error("offer count must be non-negative, got " +
                            std::to_string(offer.count));
  }
}

void validate(const OfferCatalog& catalog) {
  if (catalog.offers.empty()) {
    throw std::domain_error("offer catalog must contain at least one type");
  }
  for (const auto& o : catalog.offers) validate(o);
}

void validate(std::span<const Subscriber> subscribers) {
  for (std::size_t i = 0; i < subscribers.size(); ++i) {
    if (subscribers[i].id != i) {
      throw std::domain_error("subscriber at position " + std::to_string(i) +
                              " has id " + std::to_string(subscribers[i].id));
    }
    validate(subscribers[i]);
  }
}

double objective_value(const Assignment& assignment,
                       std::span<const Subscriber> subscribers,
                       const OfferCatalog& catalog) {
  const std::size_t n = subscribers.size();
  std::vector<double> offered(n, 0.0);
  std::vector<bool> seen(n, false);
  std::vector<std::int64_t> used(catalog.size(), 0);
  for (const auto& [sub, off] : assignment.pairs) {
    if (sub >= n) {
      throw std::invalid_argument("assignment references unknown subscriber " +
                                  std::to_string(sub));
    }
    if (off >= catalog.size()) {
      throw std::invalid_argument("assignment references unknown offer type " +
                                  std::to_string(off));
    }
    if (seen[sub]) {
      throw std::invalid_argument("subscriber " + std::to_string(sub) +
                                  " receives more than one offer");
    }
    seen[sub] = true;
    if (++used[off] > catalog.offers[off].count) {
      throw std::invalid_argument("offer type " + std::to_string(off) +
                                  " used more than its count");
    }
    offered[sub] = catalog.offers[off].value;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += expected_revenue(offered[i], subscribers[i]);
  }
  return total;
}

bool nearly_equal(double a, double b, double tol) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

}  // namespace offeropt
