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

#ifndef OFFEROPT_ORACLE_HPP_
#define OFFEROPT_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "offeropt/greedy.hpp"
#include "offeropt/model.hpp"
#include "offeropt/segments.hpp"

// Exhaustive reference solvers for small instances. They share no code path
// with the heap-based greedy or the flow / branch-and-bound solvers beyond
// the objective and feasibility definitions.
namespace offeropt {

inline constexpr std::uint64_t kOracleStateLimit = 10'000'000;

// Thrown when an instance is too large to enumerate.
class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  Assignment assignment;  // objective filled in
  std::uint64_t states = 0;
};

// Enumerates every choice of {zero offer, type 0, ..., type k-1} per
// subscriber, keeps those within the per-type counts, and returns the
// maximizer. Ties go to the lexicographically first choice vector (zero
// offer ranks first). The enumeration is split across threads by the first
// subscriber's choice; the reduction is order-preserving so the result is
// identical to brute_force_oop_serial.
OracleResult brute_force_oop(std::span<const Subscriber> subscribers,
                             const OfferCatalog& catalog);
OracleResult brute_force_oop_serial(std::span<const Subscriber> subscribers,
                                    const OfferCatalog& catalog);

AllocationMatrix brute_force_segments(const SegmentInstance& instance);
AllocationMatrix brute_force_budget(const BudgetInstance& instance);

struct InstanceDigest {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::int64_t> counts;
};

struct ComparisonReport {
  double greedy_objective = 0.0;
  double oracle_objective = 0.0;
  double ratio = 1.0;  // greedy / oracle; 1 when the oracle objective is 0
  InstanceDigest instance_digest;
  Assignment greedy_assignment;
  Assignment optimal_assignment;
};

ComparisonReport compare_greedy_vs_oracle(std::span<const Subscriber> subscribers,
                                          const OfferCatalog& catalog,
                                          const GreedyOptions& options = {});

}  // namespace offeropt

#endif  // OFFEROPT_ORACLE_HPP_
