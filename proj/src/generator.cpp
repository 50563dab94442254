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

#include "offeropt/generator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "offeropt/rng.hpp"

namespace offeropt {
namespace {

void check_range(const Range& r, double min, double max, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi || r.lo < min ||
      r.hi > max) {
    throw std::invalid_argument(std::string(name) + " must satisfy " +
                                std::to_string(min) + " <= lo <= hi <= " +
                                std::to_string(max));
  }
}

}  // namespace

void validate(const GeneratorConfig& c) {
  if (c.n < 0) throw std::invalid_argument("n must be >= 0");
  if (c.n >= (std::int64_t{1} << 32) - 1) throw std::invalid_argument("n too large");
  if (c.k < 1) throw std::invalid_argument("k must be >= 1");
  const double inf = std::numeric_limits<double>::max();
  check_range(c.p_range, 0.0, inf, "p_range");
  check_range(c.alpha_range, 0.0, 1.0, "alpha_range");
  check_range(c.gamma_range, 0.0, inf, "gamma_range");
  if (!std::isfinite(c.delta_base) || c.delta_base <= 0.0) {
    throw std::invalid_argument("delta_base must be > 0");
  }
  if (!std::isfinite(c.delta_multiplier) || c.delta_multiplier <= 0.0) {
    throw std::invalid_argument("delta_multiplier must be > 0");
  }
  if (!(c.coverage > 0.0 && c.coverage <= 1.0)) {
    throw std::invalid_argument("coverage must lie in (0, 1]");
  }
}

Instance generate_instance(const GeneratorConfig& config) {
  validate(config);
  Xoshiro256 rng(config.seed);
  Instance out;
  out.subscribers.reserve(static_cast<std::size_t>(config.n));
  for (std::int64_t i = 0; i < config.n; ++i) {
    Subscriber s;
    s.id = static_cast<SubscriberId>(i);
    s.p = rng.uniform(config.p_range.lo, config.p_range.hi);
    s.alpha = rng.uniform(config.alpha_range.lo, config.alpha_range.hi);
    s.gamma = rng.uniform(config.gamma_range.lo, config.gamma_range.hi);
    out.subscribers.push_back(s);
  }
  // The epsilon absorbs products like 0.29 * 100 = 28.999999999999996.
  const auto total = static_cast<std::int64_t>(
      std::floor(config.coverage * static_cast<double>(config.n) + 1e-9));
  double value = config.delta_base;
  for (std::int64_t j = 0; j < config.k; ++j) {
    OfferType offer;
    offer.value = value;
    offer.count = total / config.k + (j < total % config.k ? 1 : 0);
    out.catalog.offers.push_back(offer);
    value *= config.delta_multiplier;
  }
  return out;
}

SegmentInstance generate_segment_instance(const SegmentGenConfig& config) {
  if (config.k < 0 || config.m < 0 || config.max_cap < 0) {
    throw std::invalid_argument("segment generator sizes must be >= 0");
  }
  Xoshiro256 rng(config.seed);
  SegmentInstance out;
  out.probs.assign(config.k, std::vector<double>(config.m));
  for (auto& row : out.probs) {
    for (auto& p : row) p = rng.next_double();
  }
  for (std::int64_t i = 0; i < config.k; ++i) {
    out.row_caps.push_back(rng.uniform_int(0, config.max_cap));
  }
  for (std::int64_t j = 0; j < config.m; ++j) {
    out.col_caps.push_back(rng.uniform_int(0, config.max_cap));
  }
  return out;
}

BudgetInstance generate_budget_instance(const BudgetGenConfig& config) {
  if (config.k < 0 || config.m < 0 || config.max_units < 0 || config.max_value < 1) {
    throw std::invalid_argument("budget generator sizes out of range");
  }
  Xoshiro256 rng(config.seed);
  BudgetInstance out;
  out.probs.assign(config.k, std::vector<double>(config.m));
  for (auto& row : out.probs) {
    for (auto& p : row) p = rng.next_double();
  }
  for (std::int64_t i = 0; i < config.k; ++i) {
    const auto v = static_cast<double>(rng.uniform_int(1, config.max_value));
    out.values.push_back(v);
    const auto whole = static_cast<double>(rng.uniform_int(0, config.max_units));
    const double slack = rng.uniform(0.0, v);
    out.row_budgets.push_back(v * whole + slack);
  }
  for (std::int64_t j = 0; j < config.m; ++j) {
    out.col_budgets.push_back(
        rng.uniform(0.0, static_cast<double>(config.max_units * config.max_value)));
  }
  return out;
}

}  // namespace offeropt
