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

#include "offeropt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>

#include "CLI11.hpp"
#include "offeropt/bench_harness.hpp"
#include "offeropt/generator.hpp"
#include "offeropt/greedy.hpp"
#include "offeropt/instance_io.hpp"
#include "offeropt/oracle.hpp"
#include "offeropt/pipeline.hpp"
#include "offeropt/segments.hpp"

namespace offeropt {
namespace {

using Clock = std::chrono::steady_clock;

// Raised by command bodies for bad flags that CLI11 cannot catch.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void add_generator_flags(CLI::App* cmd, GeneratorConfig& g) {
  cmd->add_option("--p-min", g.p_range.lo, "Lower bound of monthly top-up");
  cmd->add_option("--p-max", g.p_range.hi, "Upper bound of monthly top-up");
  cmd->add_option("--alpha-min", g.alpha_range.lo, "Lower bound of churn probability");
  cmd->add_option("--alpha-max", g.alpha_range.hi, "Upper bound of churn probability");
  cmd->add_option("--gamma-min", g.gamma_range.lo, "Lower bound of acceptance rate");
  cmd->add_option("--gamma-max", g.gamma_range.hi, "Upper bound of acceptance rate");
  cmd->add_option("--delta-base", g.delta_base, "Value of the cheapest offer type");
  cmd->add_option("--delta-mult", g.delta_multiplier, "Value ratio between offer types");
  cmd->add_option("--coverage", g.coverage, "Total offer units as a fraction of n");
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  GeneratorConfig config;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  try {
    validate(a.config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Instance inst = generate_instance(a.config);
  write_instance(a.out, inst, &a.config);
  out << "wrote " << inst.subscribers.size() << " subscribers, " << inst.catalog.size()
      << " offer types (" << inst.catalog.total_count() << " units, budget "
      << num(inst.catalog.total_value(), 2) << ") to " << a.out << "\n";
  return kExitOk;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string out;
  std::string trace;
  bool no_harm = false;
  bool root_heap = false;
};

GreedyOptions greedy_options(bool no_harm, bool root_heap) {
  GreedyOptions o;
  o.no_harm = no_harm;
  o.root_selection = root_heap ? RootSelection::kRootHeap : RootSelection::kLinearScan;
  return o;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = read_instance(a.instance);
  const auto t0 = Clock::now();
  const GreedyResult result =
      greedy_offer(inst.subscribers, inst.catalog, greedy_options(a.no_harm, a.root_heap));
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  if (!a.out.empty()) write_assignment(a.out, result.assignment);
  if (!a.trace.empty()) write_text_file(a.trace, dump_trace_csv(result.trace));
  out << "objective " << num(result.assignment.objective) << "\n"
      << "assigned " << result.trace.assigned_count << " of " << inst.subscribers.size()
      << " subscribers (" << inst.catalog.total_count() << " offer units)\n";
  if (a.no_harm) {
    out << "no-harm extension: skipped " << result.trace.skipped_count << " subscribers\n";
  }
  out << "time_ms " << num(ms, 3) << "\n";
  return kExitOk;
}

// ---- segments --------------------------------------------------------------

struct SegmentsArgs {
  std::string instance;
  std::string out;
  std::uint64_t node_limit = BudgetOptions{}.node_limit;
};

AllocationMatrix solve_document(const SegmentDocument& doc, std::uint64_t node_limit) {
  if (const auto* counts = std::get_if<SegmentInstance>(&doc)) {
    return solve_count_allocation(*counts);
  }
  BudgetOptions options;
  options.node_limit = node_limit;
  return solve_budget_allocation(std::get<BudgetInstance>(doc), options);
}

int cmd_segments(const SegmentsArgs& a, std::ostream& out, std::ostream& err) {
  const SegmentDocument doc = read_segment_instance(a.instance);
  const AllocationMatrix alloc = solve_document(doc, a.node_limit);
  if (!a.out.empty()) write_allocation(a.out, alloc);
  out << "mode " << (std::holds_alternative<SegmentInstance>(doc) ? "counts" : "budget")
      << "\nobjective " << num(alloc.objective) << "\n";
  for (const auto& row : alloc.x) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
  if (!alloc.complete) {
    err << "branch-and-bound node limit reached; reporting best allocation found\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

// ---- pipeline --------------------------------------------------------------

struct PipelineArgs {
  std::string manifest;
  std::string out;
  bool no_harm = false;
  std::uint64_t node_limit = BudgetOptions{}.node_limit;
};

int cmd_pipeline(const PipelineArgs& a, std::ostream& out, std::ostream& err) {
  const PipelineManifest manifest = read_manifest(a.manifest);
  const SegmentDocument doc = read_segment_instance(manifest.segments);
  std::vector<std::vector<Subscriber>> groups;
  for (const auto& path : manifest.subscriber_files) groups.push_back(read_subscribers(path));
  BudgetOptions budget;
  budget.node_limit = a.node_limit;
  PipelinePlan plan;
  try {
    plan = run_pipeline(doc, manifest.offers, groups, greedy_options(a.no_harm, false), budget);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!a.out.empty()) write_text_file(a.out, dump_plan(plan));
  out << "expected acceptances " << num(plan.combined_expected_acceptances) << "\n";
  for (const auto& seg : plan.per_segment) {
    out << "segment " << seg.segment << ": " << seg.assignment.pairs.size()
        << " offers assigned, objective " << num(seg.assignment.objective) << "\n";
  }
  out << "total objective " << num(plan.total_objective) << "\n";
  if (!plan.segment_allocation.complete) {
    err << "stage-one node limit reached; plan uses the best allocation found\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string instance;
  std::string assignment;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Instance inst = read_instance(a.instance);
  const Assignment assignment = read_assignment(a.assignment);
  const VerificationReport report = verify_assignment(assignment, inst.subscribers, inst.catalog);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << "\n";
  }
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string instance;
  int trials = 0;
  std::uint64_t seed = 0;
  GeneratorConfig config;
  bool no_scarcity = false;
  bool no_harm = false;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const GreedyOptions options = greedy_options(a.no_harm, false);
  if (!a.instance.empty()) {
    const Instance inst = read_instance(a.instance);
    const ComparisonReport r = compare_greedy_vs_oracle(inst.subscribers, inst.catalog, options);
    out << "greedy " << num(r.greedy_objective, 9) << "\noracle " << num(r.oracle_objective, 9)
        << "\nratio " << num(r.ratio, 12) << "\n";
    return kExitOk;
  }
  if (a.trials <= 0) throw UsageError("compare needs --instance or --trials > 0");
  GeneratorConfig config = a.config;
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = -std::numeric_limits<double>::infinity();
  double sum_ratio = 0.0;
  int below_one = 0;
  for (int t = 0; t < a.trials; ++t) {
    config.seed = a.seed + static_cast<std::uint64_t>(t);
    Instance inst = generate_instance(config);
    if (a.no_scarcity) {
      for (auto& o : inst.catalog.offers) o.count = config.n;
    }
    const ComparisonReport r = compare_greedy_vs_oracle(inst.subscribers, inst.catalog, options);
    min_ratio = std::min(min_ratio, r.ratio);
    max_ratio = std::max(max_ratio, r.ratio);
    sum_ratio += r.ratio;
    if (r.ratio < 1.0 - 1e-9) ++below_one;
  }
  out << "trials " << a.trials << "\nmin_ratio " << num(min_ratio, 12) << "\nmean_ratio "
       << num(sum_ratio / a.trials, 12) << "\nmax_ratio " << num(max_ratio, 12)
      << "\nbelow_one " << below_one << "\n";
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::int64_t> n_list;
  std::vector<std::int64_t> k_list;
  std::uint64_t seed = 0;
  std::string out;
  bool fit = false;
  bool parallel = false;
  bool root_heap = false;
  int repeat = 1;
  GeneratorConfig config;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  config.n_list = a.n_list;
  config.k_list = a.k_list;
  config.seed = a.seed;
  config.repeat = a.repeat;
  config.parallel = a.parallel;
  config.base = a.config;
  config.greedy = greedy_options(false, a.root_heap);
  std::vector<BenchRow> rows;
  try {
    rows = run_bench(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string csv = dump_bench_csv(rows);
  if (!a.out.empty()) write_text_file(a.out, csv);
  out << csv;
  if (a.fit) {
    for (auto k : a.k_list) {
      try {
        out << "fit k=" << k << " exponent " << num(fit_time_exponent(rows, k), 4) << "\n";
      } catch (const std::invalid_argument& e) {
        out << "fit k=" << k << " skipped: " << e.what() << "\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offer optimization: segment allocation and greedy offer assignment", "offeropt"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--n", gen.config.n, "Number of subscribers")->required();
  gen_cmd->add_option("--k", gen.config.k, "Number of offer types")->required();
  gen_cmd->add_option("--seed", gen.config.seed, "PRNG seed");
  gen_cmd->add_option("--out", gen.out, "Output instance JSON")->required();
  add_generator_flags(gen_cmd, gen.config);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run the greedy offer assignment");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--out", solve.out, "Output assignment JSON");
  solve_cmd->add_option("--trace", solve.trace, "Write the selection trace as CSV");
  solve_cmd->add_flag("--no-harm", solve.no_harm,
                      "Extension: skip subscribers whose best offer lowers their revenue");
  solve_cmd->add_flag("--root-heap", solve.root_heap, "Select among queue fronts with a heap");

  SegmentsArgs seg;
  auto* seg_cmd = app.add_subcommand("segments", "Allocate offer units or budget to segments");
  seg_cmd->add_option("--instance", seg.instance, "Segment JSON")->required();
  seg_cmd->add_option("--out", seg.out, "Output allocation JSON");
  seg_cmd->add_option("--node-limit", seg.node_limit, "Branch-and-bound node limit");

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Segment allocation followed by greedy");
  pipe_cmd->add_option("--manifest", pipe.manifest, "Pipeline manifest JSON")->required();
  pipe_cmd->add_option("--out", pipe.out, "Output plan JSON");
  pipe_cmd->add_flag("--no-harm", pipe.no_harm, "Extension: see solve --no-harm");
  pipe_cmd->add_option("--node-limit", pipe.node_limit, "Branch-and-bound node limit");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check an assignment against its instance");
  ver_cmd->add_option("--instance", ver.instance, "Instance JSON")->required();
  ver_cmd->add_option("--assignment", ver.assignment, "Assignment JSON")->required();

  CompareArgs cmp;
  cmp.config.n = 8;
  cmp.config.k = 3;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare greedy with exhaustive search");
  cmp_cmd->add_option("--instance", cmp.instance, "Instance JSON (single comparison)");
  cmp_cmd->add_option("--trials", cmp.trials, "Number of generated instances");
  cmp_cmd->add_option("--seed", cmp.seed, "Seed of the first trial");
  cmp_cmd->add_option("--n", cmp.config.n, "Subscribers per generated instance");
  cmp_cmd->add_option("--k", cmp.config.k, "Offer types per generated instance");
  cmp_cmd->add_flag("--no-scarcity", cmp.no_scarcity, "Give every offer type n units");
  cmp_cmd->add_flag("--no-harm", cmp.no_harm, "Extension: see solve --no-harm");
  add_generator_flags(cmp_cmd, cmp.config);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time heap construction and the greedy loop");
  bench_cmd->add_option("--n-list", bench.n_list, "Subscriber counts")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--k-list", bench.k_list, "Offer type counts")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "PRNG seed");
  bench_cmd->add_option("--out", bench.out, "Output CSV");
  bench_cmd->add_option("--repeat", bench.repeat, "Keep the fastest of R runs per cell")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--fit", bench.fit, "Print the fitted time-vs-n exponent per k");
  bench_cmd->add_flag("--parallel", bench.parallel, "Run cells concurrently");
  bench_cmd->add_flag("--root-heap", bench.root_heap, "Select among queue fronts with a heap");
  add_generator_flags(bench_cmd, bench.config);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*seg_cmd) return cmd_segments(seg, out, err);
    if (*pipe_cmd) return cmd_pipeline(pipe, out, err);
    if (*ver_cmd) return cmd_verify(ver, out);
    if (*cmp_cmd) return cmd_compare(cmp, out);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const OracleLimitError& e) {
    err << "error: instance too large for exhaustive search: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: invalid input: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: invalid input: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace offeropt
