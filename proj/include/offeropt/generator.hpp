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

#ifndef OFFEROPT_GENERATOR_HPP_
#define OFFEROPT_GENERATOR_HPP_

#include <cstdint>
#include <vector>

#include "offeropt/model.hpp"
#include "offeropt/segments.hpp"

namespace offeropt {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Range&) const = default;
};

struct Instance {
  std::vector<Subscriber> subscribers;
  OfferCatalog catalog;

  bool operator==(const Instance&) const = default;
};

// Simulated subscriber base. Draw order per subscriber is p, alpha, gamma.
struct GeneratorConfig {
  std::int64_t n = 0;
  std::int64_t k = 1;
  std::uint64_t seed = 0;
  Range p_range{10.0, 100.0};
  Range alpha_range{0.05, 0.6};
  Range gamma_range{0.01, 0.2};
  double delta_base = 5.0;        // value of offer type 0
  double delta_multiplier = 2.0;  // value ratio between consecutive types
  double coverage = 0.5;          // total offer count as a fraction of n
};

// Throws std::invalid_argument naming the bad field.
void validate(const GeneratorConfig& config);

// Offer j has value base * multiplier^j. floor(coverage * n) units are split
// evenly across types, remainder to the lowest indices.
Instance generate_instance(const GeneratorConfig& config);

// p_ij ~ U[0, 1), K_i and M_j ~ U{0..max_cap}.
struct SegmentGenConfig {
  std::int64_t k = 2;
  std::int64_t m = 2;
  std::int64_t max_cap = 4;
  std::uint64_t seed = 0;
};
SegmentInstance generate_segment_instance(const SegmentGenConfig& config);

// v_i ~ U{1..max_value}; B_i = v_i * U{0..max_units} + U[0, v_i);
// W_j ~ U[0, max_units * max_value]. Every per-variable bound
// min(floor(B_i/v_i), floor(W_j/v_i)) is therefore at most max_units.
struct BudgetGenConfig {
  std::int64_t k = 2;
  std::int64_t m = 2;
  std::int64_t max_units = 4;
  std::int64_t max_value = 5;
  std::uint64_t seed = 0;
};
BudgetInstance generate_budget_instance(const BudgetGenConfig& config);

}  // namespace offeropt

#endif  // OFFEROPT_GENERATOR_HPP_
