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
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace offeropt {

GreedyResult greedy_offer(std::span<const Subscriber> subscribers,
                          const OfferCatalog& catalog, const GreedyOptions& options) {
  return greedy_offer(HeapSet::build(subscribers, catalog, options.root_selection),
                      subscribers, catalog, options);
}

GreedyResult greedy_offer(HeapSet heaps, std::span<const Subscriber> subscribers,
                          const OfferCatalog& catalog, const GreedyOptions& options) {
  if (heaps.num_subscribers() != subscribers.size() ||
      heaps.num_queues() != catalog.size()) {
    throw std::invalid_argument("greedy_offer: heap set does not match the instance");
  }
  GreedyResult result;
  GreedyTrace& trace = result.trace;
  trace.remaining_offers.reserve(catalog.size());
  for (const auto& o : catalog.offers) trace.remaining_offers.push_back(o.count);

  std::int64_t offers_left = catalog.total_count();
  // A type with no units can never be handed out.
  for (std::size_t j = 0; j < catalog.size(); ++j) {
    if (trace.remaining_offers[j] == 0 && heaps.is_live(static_cast<OfferIndex>(j))) {
      heaps.delete_queue(static_cast<OfferIndex>(j));
    }
  }

  const auto max_steps = static_cast<std::size_t>(
      std::min<std::int64_t>(offers_left, static_cast<std::int64_t>(subscribers.size())));
  trace.steps.reserve(max_steps);
  result.assignment.pairs.reserve(max_steps);

  while (offers_left > 0 && heaps.live_subscribers() > 0) {
    const Choice choice = heaps.find_max_of_max();
    heaps.delete_subscriber(choice.subscriber);
    if (options.no_harm &&
        choice.key < baseline_revenue(subscribers[choice.subscriber])) {
      ++trace.skipped_count;
      continue;
    }
    trace.steps.push_back({choice.subscriber, choice.offer, choice.key});
    result.assignment.pairs.push_back({choice.subscriber, choice.offer});
    --offers_left;
    if (--trace.remaining_offers[choice.offer] == 0) heaps.delete_queue(choice.offer);
  }
  trace.assigned_count = trace.steps.size();
  result.assignment.objective = objective_value(result.assignment, subscribers, catalog);
  return result;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConstraintCheck& c) { return c.passed; });
}

const ConstraintCheck* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> VerificationReport::failed_names() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

VerificationReport verify_assignment(const Assignment& assignment,
                                     std::span<const Subscriber> subscribers,
                                     const OfferCatalog& catalog) {
  VerificationReport report;
  const std::size_t n = subscribers.size();
  const std::size_t k = catalog.size();

  ConstraintCheck refs{"references", true, {}};
  ConstraintCheck one{"one_offer_per_subscriber", true, {}};
  ConstraintCheck binary{"binary_decisions", true, {}};
  std::map<SubscriberId, int> per_subscriber;
  std::map<std::pair<SubscriberId, OfferIndex>, int> per_pair;
  std::vector<std::int64_t> used(k, 0);
  for (const auto& [sub, off] : assignment.pairs) {
    if (sub >= n || off >= k) {
      if (refs.passed) {
        refs.passed = false;
        refs.detail = "pair (" + std::to_string(sub) + ", " + std::to_string(off) +
                      ") references an unknown subscriber or offer type";
      }
      continue;
    }
    if (++per_subscriber[sub] == 2 && one.passed) {
      one.passed = false;
      one.detail = "subscriber " + std::to_string(sub) + " receives more than one offer";
    }
    if (++per_pair[{sub, off}] == 2 && binary.passed) {
      binary.passed = false;
      binary.detail = "pair (" + std::to_string(sub) + ", " + std::to_string(off) +
                      ") appears more than once";
    }
    ++used[off];
  }

  ConstraintCheck counts{"offer_counts", true, {}};
  ConstraintCheck budget{"per_type_budget", true, {}};
  double total_spend = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const OfferType& o = catalog.offers[j];
    if (used[j] > o.count && counts.passed) {
      counts.passed = false;
      counts.detail = "offer type " + std::to_string(j) + " used " +
                      std::to_string(used[j]) + " times, count is " +
                      std::to_string(o.count);
    }
    const double spend = o.value * static_cast<double>(used[j]);
    if (spend > o.total_value() && budget.passed) {
      budget.passed = false;
      std::ostringstream msg;
      msg << "offer type " << j << " spends " << spend << ", budget is " << o.total_value();
      budget.detail = msg.str();
    }
    total_spend += spend;
  }
  ConstraintCheck total{"total_budget", true, {}};
  if (total_spend > catalog.total_value()) {
    total.passed = false;
    std::ostringstream msg;
    msg << "total spend " << total_spend << " exceeds budget " << catalog.total_value();
    total.detail = msg.str();
  }

  ConstraintCheck objective{"objective", true, {}};
  try {
    report.recomputed_objective = objective_value(assignment, subscribers, catalog);
    if (!nearly_equal(report.recomputed_objective, assignment.objective)) {
      objective.passed = false;
      std::ostringstream msg;
      msg.precision(17);
      msg << "reported " << assignment.objective << ", recomputed "
          << report.recomputed_objective;
      objective.detail = msg.str();
    }
  } catch (const std::exception& e) {
    objective.passed = false;
    objective.detail = std::string("cannot recompute: ") + e.what();
  }

  report.checks = {refs, one, binary, counts, budget, total, objective};
  return report;
}

}  // namespace offeropt
