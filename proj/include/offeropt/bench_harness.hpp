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

#ifndef OFFEROPT_BENCH_HARNESS_HPP_
#define OFFEROPT_BENCH_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "offeropt/generator.hpp"
#include "offeropt/greedy.hpp"

namespace offeropt {

struct BenchRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double build_ms = 0.0;  // heap construction
  double solve_ms = 0.0;  // selection loop
  double total_ms = 0.0;
  double objective = 0.0;
  std::size_t assigned = 0;
};

struct BenchConfig {
  std::vector<std::int64_t> n_list;
  std::vector<std::int64_t> k_list;
  std::uint64_t seed = 0;
  int repeat = 1;          // keep the fastest of this many runs per cell
  bool parallel = false;   // run cells concurrently; rows stay in (n, k) order
  GeneratorConfig base;    // n, k and seed are overridden per cell
  GreedyOptions greedy;
};

// One row per (n, k) in n-major order. Instance generation is not timed.
std::vector<BenchRow> run_bench(const BenchConfig& config);

// Header: n,k,build_ms,solve_ms,total_ms,objective,assigned
std::string dump_bench_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_bench_csv(std::string_view text);

// Least-squares slope of log(total_ms) against log(n) over rows with the
// given k. Throws std::invalid_argument with fewer than two distinct n.
double fit_time_exponent(const std::vector<BenchRow>& rows, std::int64_t k);

}  // namespace offeropt

#endif  // OFFEROPT_BENCH_HARNESS_HPP_
