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

#ifndef OFFEROPT_GREEDY_HPP_
#define OFFEROPT_GREEDY_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "offeropt/heapset.hpp"
#include "offeropt/model.hpp"

namespace offeropt {

struct GreedyOptions {
  // Extension: drop a subscriber instead of assigning when its best remaining
  // offer earns less than its zero-offer baseline. Off by default, in which
  // case offers are handed out while both offers and subscribers remain.
  bool no_harm = false;
  RootSelection root_selection = RootSelection::kLinearScan;
};

struct TraceStep {
  SubscriberId subscriber = 0;
  OfferIndex offer = 0;
  double revenue = 0.0;

  bool operator==(const TraceStep&) const = default;
};

struct GreedyTrace {
  std::vector<TraceStep> steps;             // in selection order
  std::vector<std::int64_t> remaining_offers;
  std::size_t assigned_count = 0;
  std::size_t skipped_count = 0;            // no-harm drops

  bool operator==(const GreedyTrace&) const = default;
};

struct GreedyResult {
  Assignment assignment;
  GreedyTrace trace;
};

// Repeatedly takes the (subscriber, offer) pair of maximum expected revenue
// among remaining subscribers and non-exhausted offer types.
GreedyResult greedy_offer(std::span<const Subscriber> subscribers,
                          const OfferCatalog& catalog,
                          const GreedyOptions& options = {});

// Same loop on a HeapSet already built from `subscribers` and `catalog`.
// Lets callers time construction separately.
GreedyResult greedy_offer(HeapSet heaps, std::span<const Subscriber> subscribers,
                          const OfferCatalog& catalog,
                          const GreedyOptions& options = {});

struct ConstraintCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<ConstraintCheck> checks;
  double recomputed_objective = 0.0;

  bool passed() const;
  const ConstraintCheck* find(std::string_view name) const;
  std::vector<std::string> failed_names() const;
};

// Reports every constraint family; never throws on a violation.
//
// Checks: references, one_offer_per_subscriber, binary_decisions,
// offer_counts, per_type_budget, total_budget, objective.
VerificationReport verify_assignment(const Assignment& assignment,
                                     std::span<const Subscriber> subscribers,
                                     const OfferCatalog& catalog);

}  // namespace offeropt

#endif  // OFFEROPT_GREEDY_HPP_
