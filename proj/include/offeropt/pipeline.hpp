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

#ifndef OFFEROPT_PIPELINE_HPP_
#define OFFEROPT_PIPELINE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "offeropt/greedy.hpp"
#include "offeropt/instance_io.hpp"
#include "offeropt/segments.hpp"

// Two-stage campaign planning: split offer units across segments, then run
// the greedy assignment inside each segment with the units it was granted.
namespace offeropt {

struct SegmentPlan {
  std::size_t segment = 0;
  OfferCatalog catalog;   // counts are column `segment` of the allocation
  Assignment assignment;
};

struct PipelinePlan {
  AllocationMatrix segment_allocation;
  std::vector<SegmentPlan> per_segment;
  double combined_expected_acceptances = 0.0;  // stage-one objective
  double total_objective = 0.0;                // sum of segment revenues
};

// Manifest document:
//   { schema, segments: "<segment json>",
//     offers: [{label?, value}],                   (required in counts mode)
//     subscribers: [{segment: j, path: "<instance json>"}] }
// Relative paths resolve against the manifest's directory.
struct PipelineManifest {
  std::filesystem::path segments;
  std::vector<OfferType> offers;  // counts unused
  std::vector<std::filesystem::path> subscriber_files;  // indexed by segment
};

PipelineManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);
PipelineManifest read_manifest(const std::filesystem::path& path);

// `offers` supplies values and labels per offer type; when empty in budget
// mode the instance's unit values are used. Throws std::invalid_argument when
// the segment count and subscriber groups disagree.
PipelinePlan run_pipeline(const SegmentDocument& segments, std::vector<OfferType> offers,
                          const std::vector<std::vector<Subscriber>>& subscribers,
                          const GreedyOptions& greedy = {}, const BudgetOptions& budget = {});

std::string dump_plan(const PipelinePlan& plan);

}  // namespace offeropt

#endif  // OFFEROPT_PIPELINE_HPP_
