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

#include "offeropt/oracle.hpp"

#include <optional>
#include <vector>

namespace offeropt {
namespace {

std::uint64_t checked_state_count(const std::vector<std::uint64_t>& radices) {
  std::uint64_t states = 1;
  for (auto r : radices) {
    if (r != 0 && states > kOracleStateLimit / r) {
      throw OracleLimitError("search space exceeds " + std::to_string(kOracleStateLimit) +
                             " states");
    }
    states *= r;
  }
  if (states > kOracleStateLimit) {
    throw OracleLimitError("search space exceeds " + std::to_string(kOracleStateLimit) +
                           " states");
  }
  return states;
}

// Advances a mixed-radix counter (last digit fastest). False on wrap-around.
bool advance(std::vector<std::uint32_t>& digits, std::size_t first,
             const std::vector<std::uint64_t>& radices) {
  for (std::size_t d = digits.size(); d-- > first;) {
    if (++digits[d] < radices[d]) return true;
    digits[d] = 0;
  }
  return false;
}

// Per-subscriber revenue table; column 0 is the zero offer.
struct OopTable {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> revenue;  // n x (k + 1)
  std::vector<std::int64_t> counts;

  double at(std::size_t i, std::uint32_t choice) const {
    return revenue[i * (k + 1) + choice];
  }
};

OopTable make_table(std::span<const Subscriber> subscribers, const OfferCatalog& catalog) {
  validate(catalog);
  validate(subscribers);
  OopTable t;
  t.n = subscribers.size();
  t.k = catalog.size();
  checked_state_count(std::vector<std::uint64_t>(t.n, t.k + 1));
  t.revenue.resize(t.n * (t.k + 1));
  for (std::size_t i = 0; i < t.n; ++i) {
    t.revenue[i * (t.k + 1)] = expected_revenue(0.0, subscribers[i]);
    for (std::size_t j = 0; j < t.k; ++j) {
      t.revenue[i * (t.k + 1) + j + 1] =
          expected_revenue(catalog.offers[j].value, subscribers[i]);
    }
  }
  for (const auto& o : catalog.offers) t.counts.push_back(o.count);
  return t;
}

struct Best {
  bool found = false;
  double value = 0.0;
  std::vector<std::uint32_t> choice;
};

// Evaluates one full choice vector; nullopt when it breaks a count.
std::optional<double> evaluate(const OopTable& t, const std::vector<std::uint32_t>& choice,
                               std::vector<std::int64_t>& used) {
  std::fill(used.begin(), used.end(), 0);
  for (std::size_t i = 0; i < t.n; ++i) {
    if (choice[i] == 0) continue;
    if (++used[choice[i] - 1] > t.counts[choice[i] - 1]) return std::nullopt;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < t.n; ++i) total += t.at(i, choice[i]);
  return total;
}

void consider(const OopTable& t, const std::vector<std::uint32_t>& choice,
              std::vector<std::int64_t>& used, Best& best) {
  const auto value = evaluate(t, choice, used);
  if (value && (!best.found || *value > best.value)) {
    best.found = true;
    best.value = *value;
    best.choice = choice;
  }
}

OracleResult to_result(const Best& best, std::span<const Subscriber> subscribers,
                       const OfferCatalog& catalog, std::uint64_t states) {
  OracleResult out;
  out.states = states;
  for (std::size_t i = 0; i < best.choice.size(); ++i) {
    if (best.choice[i] != 0) {
      out.assignment.pairs.push_back(
          {static_cast<SubscriberId>(i), static_cast<OfferIndex>(best.choice[i] - 1)});
    }
  }
  out.assignment.objective = objective_value(out.assignment, subscribers, catalog);
  return out;
}

template <typename Feasible, typename Objective>
AllocationMatrix enumerate_matrices(std::size_t k, std::size_t m,
                                    const std::vector<std::uint64_t>& radices,
                                    Feasible feasible, Objective objective) {
  checked_state_count(radices);
  std::vector<std::uint32_t> digits(k * m, 0);
  CountMatrix x(k, std::vector<std::int64_t>(m, 0));
  AllocationMatrix best;
  best.x = x;
  bool found = false;
  do {
    for (std::size_t v = 0; v < digits.size(); ++v) x[v / m][v % m] = digits[v];
    if (!feasible(x)) continue;
    const double value = objective(x);
    if (!found || value > best.objective) {
      found = true;
      best.objective = value;
      best.x = x;
    }
  } while (advance(digits, 0, radices));
  return best;
}

}  // namespace

OracleResult brute_force_oop_serial(std::span<const Subscriber> subscribers,
                                    const OfferCatalog& catalog) {
  const OopTable t = make_table(subscribers, catalog);
  const std::vector<std::uint64_t> radices(t.n, t.k + 1);
  std::vector<std::uint32_t> choice(t.n, 0);
  std::vector<std::int64_t> used(t.k, 0);
  Best best;
  std::uint64_t states = 0;
  do {
    ++states;
    consider(t, choice, used, best);
  } while (advance(choice, 0, radices));
  return to_result(best, subscribers, catalog, states);
}

OracleResult brute_force_oop(std::span<const Subscriber> subscribers,
                             const OfferCatalog& catalog) {
  const OopTable t = make_table(subscribers, catalog);
  if (t.n == 0) return brute_force_oop_serial(subscribers, catalog);
  const std::vector<std::uint64_t> radices(t.n, t.k + 1);
  const auto blocks = static_cast<std::int64_t>(t.k + 1);
  std::vector<Best> block_best(blocks);
  std::vector<std::uint64_t> block_states(blocks, 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    std::vector<std::uint32_t> choice(t.n, 0);
    choice[0] = static_cast<std::uint32_t>(b);
    std::vector<std::int64_t> used(t.k, 0);
    do {
      ++block_states[b];
      consider(t, choice, used, block_best[b]);
    } while (advance(choice, 1, radices));
  }

  // Blocks are in lexicographic order; strict improvement keeps the first.
  Best best;
  std::uint64_t states = 0;
  for (std::int64_t b = 0; b < blocks; ++b) {
    states += block_states[b];
    const Best& cand = block_best[b];
    if (cand.found && (!best.found || cand.value > best.value)) best = cand;
  }
  return to_result(best, subscribers, catalog, states);
}

AllocationMatrix brute_force_segments(const SegmentInstance& instance) {
  validate(instance);
  const std::size_t k = instance.rows();
  const std::size_t m = instance.cols();
  std::vector<std::uint64_t> radices;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      radices.push_back(
          static_cast<std::uint64_t>(std::min(instance.row_caps[i], instance.col_caps[j])) + 1);
    }
  }
  return enumerate_matrices(
      k, m, radices, [&](const CountMatrix& x) { return is_feasible(instance, x); },
      [&](const CountMatrix& x) { return allocation_objective(instance.probs, x); });
}

AllocationMatrix brute_force_budget(const BudgetInstance& instance) {
  validate(instance);
  const std::size_t k = instance.rows();
  const std::size_t m = instance.cols();
  std::vector<std::uint64_t> radices;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto ub = std::min(max_units(instance.row_budgets[i], instance.values[i]),
                               max_units(instance.col_budgets[j], instance.values[i]));
      radices.push_back(static_cast<std::uint64_t>(ub) + 1);
    }
  }
  return enumerate_matrices(
      k, m, radices, [&](const CountMatrix& x) { return is_feasible(instance, x); },
      [&](const CountMatrix& x) { return allocation_objective(instance.probs, x); });
}

ComparisonReport compare_greedy_vs_oracle(std::span<const Subscriber> subscribers,
                                          const OfferCatalog& catalog,
                                          const GreedyOptions& options) {
  ComparisonReport report;
  OracleResult oracle = brute_force_oop(subscribers, catalog);
  GreedyResult greedy = greedy_offer(subscribers, catalog, options);
  report.greedy_objective = greedy.assignment.objective;
  report.oracle_objective = oracle.assignment.objective;
  report.ratio = report.oracle_objective > 0.0
                     ? report.greedy_objective / report.oracle_objective
                     : 1.0;
  report.instance_digest.n = subscribers.size();
  report.instance_digest.k = catalog.size();
  for (const auto& o : catalog.offers) report.instance_digest.counts.push_back(o.count);
  report.greedy_assignment = std::move(greedy.assignment);
  report.optimal_assignment = std::move(oracle.assignment);
  return report;
}

}  // namespace offeropt
