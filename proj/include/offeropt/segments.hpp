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

#ifndef OFFEROPT_SEGMENTS_HPP_
#define OFFEROPT_SEGMENTS_HPP_

#include <cstdint>
#include <vector>

// Segment-level allocation of offer types (rows, i < k) to subscriber
// segments (columns, j < m), maximizing expected acceptances
// sum_ij p_ij * x_ij over non-negative integer x.
namespace offeropt {

using ProbMatrix = std::vector<std::vector<double>>;
using CountMatrix = std::vector<std::vector<std::int64_t>>;

// Row and column limits are unit counts.
struct SegmentInstance {
  ProbMatrix probs;                    // k x m
  std::vector<std::int64_t> row_caps;  // K_i
  std::vector<std::int64_t> col_caps;  // M_j

  std::size_t rows() const { return row_caps.size(); }
  std::size_t cols() const { return col_caps.size(); }
  bool operator==(const SegmentInstance&) const = default;
};

// Row and column limits are budgets; one unit of type i costs values[i].
struct BudgetInstance {
  ProbMatrix probs;                   // k x m
  std::vector<double> values;         // v_i > 0
  std::vector<double> row_budgets;    // B_i
  std::vector<double> col_budgets;    // W_j

  std::size_t rows() const { return values.size(); }
  std::size_t cols() const { return col_budgets.size(); }
  bool operator==(const BudgetInstance&) const = default;

  // B_i = v_i * K_i and W_j = segment_unit_value * M_j.
  static BudgetInstance from_counts(const SegmentInstance& counts,
                                    std::vector<double> values,
                                    double segment_unit_value);
};

struct AllocationMatrix {
  CountMatrix x;
  double objective = 0.0;
  bool complete = true;  // false when branch-and-bound hit its node limit

  bool operator==(const AllocationMatrix&) const = default;
};

struct BudgetOptions {
  std::uint64_t node_limit = 50'000'000;
};

// Throw std::domain_error on shape mismatches or out-of-range entries.
void validate(const SegmentInstance& instance);
void validate(const BudgetInstance& instance);

double allocation_objective(const ProbMatrix& probs, const CountMatrix& x);

// spend <= budget up to a 1e-12 relative slack for accumulated rounding.
bool within_budget(double spend, double budget);

// Largest c >= 0 with value * (used + c) within budget.
std::int64_t max_units(double budget, double value, std::int64_t used = 0);

bool is_feasible(const SegmentInstance& instance, const CountMatrix& x);
bool is_feasible(const BudgetInstance& instance, const CountMatrix& x);

// Exact optimum via successive-shortest-path min-cost flow on the
// source -> offer type -> segment -> sink network. Stops augmenting once the
// cheapest residual path no longer gains, so capacity may be left unused.
AllocationMatrix solve_count_allocation(const SegmentInstance& instance);

// Exact optimum via depth-first branch-and-bound. Returns the best allocation
// found with complete == false if the node limit is exceeded.
AllocationMatrix solve_budget_allocation(const BudgetInstance& instance,
                                         const BudgetOptions& options = {});

}  // namespace offeropt

#endif  // OFFEROPT_SEGMENTS_HPP_
