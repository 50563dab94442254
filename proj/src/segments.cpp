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

#include "offeropt/segments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace offeropt {
namespace {

constexpr double kGainEpsilon = 1e-12;

void validate_probs(const ProbMatrix& probs, std::size_t k, std::size_t m) {
  if (probs.size() != k) {
    throw std::domain_error("probs has " + std::to_string(probs.size()) +
                            " rows, expected " + std::to_string(k));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (probs[i].size() != m) {
      throw std::domain_error("probs row " + std::to_string(i) + " has " +
                              std::to_string(probs[i].size()) + " entries, expected " +
                              std::to_string(m));
    }
    for (double p : probs[i]) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("probability out of [0, 1] in row " + std::to_string(i));
      }
    }
  }
}

void validate_nonnegative(const std::vector<double>& v, const char* name) {
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::domain_error(std::string(name) + " entries must be finite and >= 0");
    }
  }
}

bool shape_matches(const CountMatrix& x, std::size_t k, std::size_t m) {
  if (x.size() != k) return false;
  return std::all_of(x.begin(), x.end(), [m](const auto& row) { return row.size() == m; });
}

// Successive shortest paths with Johnson potentials on a dense residual
// graph. Costs are real-valued; capacities are integral so every
// augmentation, and hence the final flow, is integral.
class MinCostFlow {
 public:
  struct Edge {
    int to;
    std::int64_t cap;
    double cost;
  };

  explicit MinCostFlow(int nodes) : adj_(nodes) {}

  int add_edge(int from, int to, std::int64_t cap, double cost) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, cap, cost});
    edges_.push_back({from, 0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  std::int64_t flow_on(int edge_id) const { return edges_[edge_id ^ 1].cap; }

  // Augments along shortest paths while they have negative cost.
  void run(int source, int sink) {
    const int n = static_cast<int>(adj_.size());
    init_potentials(source);
    std::vector<double> dist(n);
    std::vector<int> via(n);
    std::vector<bool> done(n);
    for (;;) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      std::fill(done.begin(), done.end(), false);
      dist[source] = 0.0;
      for (int round = 0; round < n; ++round) {
        int u = -1;
        for (int v = 0; v < n; ++v) {
          if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
        }
        if (u < 0) break;
        done[u] = true;
        for (int id : adj_[u]) {
          const Edge& e = edges_[id];
          if (e.cap == 0 || done[e.to]) continue;
          // Reduced costs are >= 0 up to rounding; clamp keeps labels monotone.
          const double reduced = std::max(0.0, e.cost + potential_[u] - potential_[e.to]);
          if (dist[u] + reduced < dist[e.to]) {
            dist[e.to] = dist[u] + reduced;
            via[e.to] = id;
          }
        }
      }
      if (dist[sink] == kInf) return;
      const double path_cost = dist[sink] + potential_[sink] - potential_[source];
      if (path_cost >= -kGainEpsilon) return;
      for (int v = 0; v < n; ++v) potential_[v] += std::min(dist[v], dist[sink]);

      std::int64_t push = std::numeric_limits<std::int64_t>::max();
      for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        push = std::min(push, edges_[via[v]].cap);
      }
      for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].cap -= push;
        edges_[via[v] ^ 1].cap += push;
      }
    }
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  // One Bellman-Ford pass from the source handles the negative arc costs.
  void init_potentials(int source) {
    const int n = static_cast<int>(adj_.size());
    potential_.assign(n, kInf);
    potential_[source] = 0.0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int u = 0; u < n; ++u) {
        if (potential_[u] == kInf) continue;
        for (int id : adj_[u]) {
          const Edge& e = edges_[id];
          if (e.cap > 0 && potential_[u] + e.cost < potential_[e.to]) {
            potential_[e.to] = potential_[u] + e.cost;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    double finite_max = 0.0;
    for (double p : potential_) {
      if (p != kInf) finite_max = std::max(finite_max, p);
    }
    for (double& p : potential_) {
      if (p == kInf) p = finite_max;
    }
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::vector<double> potential_;
};

struct BranchVar {
  std::size_t row;
  std::size_t col;
  double prob;
};

class BudgetSearch {
 public:
  BudgetSearch(const BudgetInstance& inst, const BudgetOptions& options)
      : inst_(inst), options_(options) {
    const std::size_t k = inst.rows();
    const std::size_t m = inst.cols();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double p = inst.probs[i][j];
        // Zero-probability units never add value; leaving them at zero keeps
        // the output canonical.
        if (p <= 0.0) continue;
        if (max_units(inst.row_budgets[i], inst.values[i]) == 0) continue;
        if (max_units(inst.col_budgets[j], inst.values[i]) == 0) continue;
        vars_.push_back({i, j, p});
      }
    }
    std::stable_sort(vars_.begin(), vars_.end(),
                     [](const BranchVar& a, const BranchVar& b) { return a.prob > b.prob; });
    // best_row_prob_[d * k + i]: max probability among vars[d..] in row i.
    best_row_prob_.assign((vars_.size() + 1) * k, 0.0);
    for (std::size_t d = vars_.size(); d-- > 0;) {
      for (std::size_t i = 0; i < k; ++i) {
        best_row_prob_[d * k + i] = best_row_prob_[(d + 1) * k + i];
      }
      double& slot = best_row_prob_[d * k + vars_[d].row];
      slot = std::max(slot, vars_[d].prob);
    }
    x_.assign(k, std::vector<std::int64_t>(m, 0));
    best_x_ = x_;
    row_used_.assign(k, 0);
    col_spent_.assign(m, 0.0);
  }

  AllocationMatrix run() {
    descend(0, 0.0);
    AllocationMatrix out;
    out.x = best_x_;
    out.objective = allocation_objective(inst_.probs, out.x);
    out.complete = !aborted_;
    return out;
  }

 private:
  double upper_bound(std::size_t depth, double value) const {
    const std::size_t k = inst_.rows();
    double bound = value;
    for (std::size_t i = 0; i < k; ++i) {
      const double p = best_row_prob_[depth * k + i];
      if (p <= 0.0) continue;
      const auto units = max_units(inst_.row_budgets[i], inst_.values[i], row_used_[i]);
      bound += static_cast<double>(units) * p;
    }
    return bound;
  }

  void descend(std::size_t depth, double value) {
    if (aborted_) return;
    if (++nodes_ > options_.node_limit) {
      aborted_ = true;
      return;
    }
    if (value > best_value_) {
      best_value_ = value;
      best_x_ = x_;
    }
    if (depth == vars_.size()) return;
    if (upper_bound(depth, value) <= best_value_ + kGainEpsilon) return;

    const BranchVar& var = vars_[depth];
    const double v = inst_.values[var.row];
    const std::int64_t by_row = max_units(inst_.row_budgets[var.row], v, row_used_[var.row]);
    std::int64_t by_col = 0;
    while (by_col < by_row &&
           within_budget(col_spent_[var.col] + v * static_cast<double>(by_col + 1),
                         inst_.col_budgets[var.col])) {
      ++by_col;
    }
    for (std::int64_t units = by_col; units >= 0; --units) {
      x_[var.row][var.col] = units;
      row_used_[var.row] += units;
      col_spent_[var.col] += v * static_cast<double>(units);
      descend(depth + 1, value + var.prob * static_cast<double>(units));
      col_spent_[var.col] -= v * static_cast<double>(units);
      row_used_[var.row] -= units;
      x_[var.row][var.col] = 0;
      if (aborted_) return;
    }
  }

  const BudgetInstance& inst_;
  BudgetOptions options_;
  std::vector<BranchVar> vars_;
  std::vector<double> best_row_prob_;
  CountMatrix x_;
  CountMatrix best_x_;
  std::vector<std::int64_t> row_used_;
  std::vector<double> col_spent_;
  double best_value_ = 0.0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

BudgetInstance BudgetInstance::from_counts(const SegmentInstance& counts,
                                           std::vector<double> values,
                                           double segment_unit_value) {
  if (values.size() != counts.rows()) {
    throw std::domain_error("from_counts: one value per offer type required");
  }
  BudgetInstance out;
  out.probs = counts.probs;
  for (std::size_t i = 0; i < counts.rows(); ++i) {
    out.row_budgets.push_back(values[i] * static_cast<double>(counts.row_caps[i]));
  }
  for (auto cap : counts.col_caps) {
    out.col_budgets.push_back(segment_unit_value * static_cast<double>(cap));
  }
  out.values = std::move(values);
  return out;
}

void validate(const SegmentInstance& instance) {
  for (auto c : instance.row_caps) {
    if (c < 0) throw std::domain_error("row_caps entries must be >= 0");
  }
  for (auto c : instance.col_caps) {
    if (c < 0) throw std::domain_error("col_caps entries must be >= 0");
  }
  validate_probs(instance.probs, instance.rows(), instance.cols());
}

void validate(const BudgetInstance& instance) {
  if (instance.row_budgets.size() != instance.rows()) {
    throw std::domain_error("row_budgets must have one entry per offer type");
  }
  for (double v : instance.values) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::domain_error("values entries must be finite and > 0");
    }
  }
  validate_nonnegative(instance.row_budgets, "row_budgets");
  validate_nonnegative(instance.col_budgets, "col_budgets");
  validate_probs(instance.probs, instance.rows(), instance.cols());
}

double allocation_objective(const ProbMatrix& probs, const CountMatrix& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x[i].size(); ++j) {
      total += probs[i][j] * static_cast<double>(x[i][j]);
    }
  }
  return total;
}

bool within_budget(double spend, double budget) {
  return spend <= budget + 1e-12 * std::max(1.0, std::fabs(budget));
}

std::int64_t max_units(double budget, double value, std::int64_t used) {
  const double raw = std::floor(budget / value) - static_cast<double>(used);
  auto units = static_cast<std::int64_t>(std::clamp(raw, 0.0, 1e15));
  while (units > 0 && !within_budget(value * static_cast<double>(used + units), budget)) {
    --units;
  }
  while (within_budget(value * static_cast<double>(used + units + 1), budget)) ++units;
  return units;
}

bool is_feasible(const SegmentInstance& instance, const CountMatrix& x) {
  const std::size_t k = instance.rows();
  const std::size_t m = instance.cols();
  if (!shape_matches(x, k, m)) return false;
  std::vector<std::int64_t> col(m, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (x[i][j] < 0) return false;
      row += x[i][j];
      col[j] += x[i][j];
    }
    if (row > instance.row_caps[i]) return false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (col[j] > instance.col_caps[j]) return false;
  }
  return true;
}

bool is_feasible(const BudgetInstance& instance, const CountMatrix& x) {
  const std::size_t k = instance.rows();
  const std::size_t m = instance.cols();
  if (!shape_matches(x, k, m)) return false;
  std::vector<double> col(m, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (x[i][j] < 0) return false;
      row += x[i][j];
      col[j] += instance.values[i] * static_cast<double>(x[i][j]);
    }
    if (!within_budget(instance.values[i] * static_cast<double>(row),
                       instance.row_budgets[i])) {
      return false;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!within_budget(col[j], instance.col_budgets[j])) return false;
  }
  return true;
}

AllocationMatrix solve_count_allocation(const SegmentInstance& instance) {
  validate(instance);
  const std::size_t k = instance.rows();
  const std::size_t m = instance.cols();
  const int source = 0;
  const int sink = static_cast<int>(k + m + 1);
  MinCostFlow flow(sink + 1);
  for (std::size_t i = 0; i < k; ++i) {
    flow.add_edge(source, static_cast<int>(1 + i), instance.row_caps[i], 0.0);
  }
  std::vector<int> arc(k * m);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      arc[i * m + j] = flow.add_edge(static_cast<int>(1 + i), static_cast<int>(1 + k + j),
                                     std::min(instance.row_caps[i], instance.col_caps[j]),
                                     -instance.probs[i][j]);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    flow.add_edge(static_cast<int>(1 + k + j), sink, instance.col_caps[j], 0.0);
  }
  flow.run(source, sink);

  AllocationMatrix out;
  out.x.assign(k, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.x[i][j] = flow.flow_on(arc[i * m + j]);
  }
  out.objective = allocation_objective(instance.probs, out.x);
  return out;
}

AllocationMatrix solve_budget_allocation(const BudgetInstance& instance,
                                         const BudgetOptions& options) {
  validate(instance);
  return BudgetSearch(instance, options).run();
}

}  // namespace offeropt
