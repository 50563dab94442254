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

#include "offeropt/bench_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "offeropt/heapset.hpp"

namespace offeropt {
namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

BenchRow run_cell(const BenchConfig& config, std::int64_t n, std::int64_t k) {
  GeneratorConfig gen = config.base;
  gen.n = n;
  gen.k = k;
  gen.seed = config.seed;
  const Instance inst = generate_instance(gen);

  BenchRow best;
  best.n = n;
  best.k = k;
  for (int rep = 0; rep < std::max(1, config.repeat); ++rep) {
    const auto t0 = Clock::now();
    HeapSet heaps = HeapSet::build(inst.subscribers, inst.catalog,
                                   config.greedy.root_selection);
    const auto t1 = Clock::now();
    GreedyResult result =
        greedy_offer(std::move(heaps), inst.subscribers, inst.catalog, config.greedy);
    const auto t2 = Clock::now();
    const double total = ms_between(t0, t2);
    if (rep == 0 || total < best.total_ms) {
      best.build_ms = ms_between(t0, t1);
      best.solve_ms = ms_between(t1, t2);
      best.total_ms = total;
      best.objective = result.assignment.objective;
      best.assigned = result.trace.assigned_count;
    }
  }
  return best;
}

std::string fmt(double v, const char* spec) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  for (auto n : config.n_list) {
    for (auto k : config.k_list) cells.emplace_back(n, k);
  }
  // Validate every cell before timing anything.
  for (const auto& [n, k] : cells) {
    GeneratorConfig gen = config.base;
    gen.n = n;
    gen.k = k;
    validate(gen);
  }
  std::vector<BenchRow> rows(cells.size());
  const auto count = static_cast<std::int64_t>(cells.size());
  if (config.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < count; ++c) {
      rows[c] = run_cell(config, cells[c].first, cells[c].second);
    }
  } else {
    for (std::int64_t c = 0; c < count; ++c) {
      rows[c] = run_cell(config, cells[c].first, cells[c].second);
    }
  }
  return rows;
}

std::string dump_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "n,k,build_ms,solve_ms,total_ms,objective,assigned\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + fmt(r.build_ms, "%.3f") +
           "," + fmt(r.solve_ms, "%.3f") + "," + fmt(r.total_ms, "%.3f") + "," +
           fmt(r.objective, "%.17g") + "," + std::to_string(r.assigned) + "\n";
  }
  return out;
}

std::vector<BenchRow> parse_bench_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "n,k,build_ms,solve_ms,total_ms,objective,assigned") {
    throw std::invalid_argument("bench CSV: unexpected header");
  }
  std::vector<BenchRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    BenchRow r;
    unsigned long long assigned = 0;
    long long n = 0;
    long long k = 0;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lf,%lf,%lf,%lf,%llu", &n, &k, &r.build_ms,
                    &r.solve_ms, &r.total_ms, &r.objective, &assigned) != 7) {
      throw std::invalid_argument("bench CSV: malformed line " + std::to_string(line_no));
    }
    r.n = n;
    r.k = k;
    r.assigned = assigned;
    rows.push_back(r);
  }
  return rows;
}

double fit_time_exponent(const std::vector<BenchRow>& rows, std::int64_t k) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::set<std::int64_t> distinct;
  for (const auto& r : rows) {
    if (r.k != k || r.n <= 0 || r.total_ms <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(r.total_ms));
    distinct.insert(r.n);
  }
  if (distinct.size() < 2) {
    throw std::invalid_argument("fit needs at least two distinct n at k = " + std::to_string(k));
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace offeropt
