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

#ifndef OFFEROPT_INSTANCE_IO_HPP_
#define OFFEROPT_INSTANCE_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "offeropt/generator.hpp"
#include "offeropt/greedy.hpp"
#include "offeropt/model.hpp"
#include "offeropt/segments.hpp"

// JSON documents (all tagged "schema": "offeropt/v1"):
//
//   instance    { schema, subscribers: [{id, p, alpha, gamma}],
//                 offers: [{label?, value, count}], generator? }
//   segments    { schema, mode: "counts", probs, row_caps, col_caps }
//               { schema, mode: "budget", probs, values, row_budgets, col_budgets }
//   assignment  { schema, pairs: [{subscriber, offer}], objective }
//   allocation  { schema, x, objective, complete }
//
// Doubles are written in shortest round-trip form, so write-then-read is
// exact. Output is byte-stable for equal inputs.
namespace offeropt {

inline constexpr std::string_view kSchemaTag = "offeropt/v1";

class FormatError : public std::runtime_error {
 public:
  enum class Kind { kIo, kParse, kSchema, kMissingField, kType, kInvariant };

  FormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using SegmentDocument = std::variant<SegmentInstance, BudgetInstance>;

// `generator`, when given, is recorded alongside the instance (seed, ranges
// and PRNG name). Readers ignore it.
std::string dump_instance(const Instance& instance, const GeneratorConfig* generator = nullptr);
Instance parse_instance(std::string_view text);

// Accepts an instance document whose "offers" field may be absent.
std::vector<Subscriber> parse_subscribers(std::string_view text);

std::string dump_assignment(const Assignment& assignment);
Assignment parse_assignment(std::string_view text);

std::string dump_segment_document(const SegmentDocument& doc);
SegmentDocument parse_segment_document(std::string_view text);

std::string dump_allocation(const AllocationMatrix& allocation);
AllocationMatrix parse_allocation(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// File wrappers; errors name the file.
Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& instance,
                    const GeneratorConfig* generator = nullptr);
std::vector<Subscriber> read_subscribers(const std::filesystem::path& path);
Assignment read_assignment(const std::filesystem::path& path);
void write_assignment(const std::filesystem::path& path, const Assignment& assignment);
SegmentDocument read_segment_instance(const std::filesystem::path& path);
void write_segment_instance(const std::filesystem::path& path, const SegmentDocument& doc);
AllocationMatrix read_allocation(const std::filesystem::path& path);
void write_allocation(const std::filesystem::path& path, const AllocationMatrix& allocation);

// CSV with header step,subscriber,offer,revenue.
std::string dump_trace_csv(const GreedyTrace& trace);

}  // namespace offeropt

#endif  // OFFEROPT_INSTANCE_IO_HPP_
