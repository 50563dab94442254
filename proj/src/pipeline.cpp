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

#include "offeropt/pipeline.hpp"

#include <stdexcept>

#include "json.hpp"

namespace offeropt {
namespace {

using json = nlohmann::json;
using Kind = FormatError::Kind;

json catalog_json(const OfferCatalog& catalog) {
  json out = json::array();
  for (const auto& o : catalog.offers) {
    json item;
    if (o.label) item["label"] = *o.label;
    item["value"] = o.value;
    item["count"] = o.count;
    out.push_back(item);
  }
  return out;
}

}  // namespace

PipelineManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(Kind::kParse, std::string("malformed manifest: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != kSchemaTag) {
    throw FormatError(Kind::kSchema, "manifest: missing or mismatched schema tag");
  }
  PipelineManifest out;
  try {
    out.segments = base_dir / doc.at("segments").get<std::string>();
    if (const auto it = doc.find("offers"); it != doc.end()) {
      for (const auto& item : *it) {
        OfferType o;
        o.value = item.at("value").get<double>();
        if (item.contains("label")) o.label = item.at("label").get<std::string>();
        validate(o);
        out.offers.push_back(std::move(o));
      }
    }
    const json& subs = doc.at("subscribers");
    std::vector<bool> seen;
    for (const auto& item : subs) {
      const auto segment = item.at("segment").get<std::int64_t>();
      if (segment < 0) throw FormatError(Kind::kInvariant, "manifest: negative segment index");
      const auto idx = static_cast<std::size_t>(segment);
      if (idx >= out.subscriber_files.size()) {
        out.subscriber_files.resize(idx + 1);
        seen.resize(idx + 1, false);
      }
      if (seen[idx]) {
        throw FormatError(Kind::kInvariant,
                          "manifest: segment " + std::to_string(idx) + " listed twice");
      }
      seen[idx] = true;
      out.subscriber_files[idx] = base_dir / item.at("path").get<std::string>();
    }
    for (std::size_t j = 0; j < seen.size(); ++j) {
      if (!seen[j]) {
        throw FormatError(Kind::kInvariant,
                          "manifest: no subscriber file for segment " + std::to_string(j));
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(Kind::kMissingField, std::string("manifest: ") + e.what());
  } catch (const std::domain_error& e) {
    throw FormatError(Kind::kInvariant, std::string("manifest: ") + e.what());
  }
  return out;
}

PipelineManifest read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_text_file(path), path.parent_path());
}

PipelinePlan run_pipeline(const SegmentDocument& segments, std::vector<OfferType> offers,
                          const std::vector<std::vector<Subscriber>>& subscribers,
                          const GreedyOptions& greedy, const BudgetOptions& budget) {
  PipelinePlan plan;
  std::size_t k = 0;
  std::size_t m = 0;
  if (const auto* counts = std::get_if<SegmentInstance>(&segments)) {
    k = counts->rows();
    m = counts->cols();
    plan.segment_allocation = solve_count_allocation(*counts);
  } else {
    const auto& b = std::get<BudgetInstance>(segments);
    k = b.rows();
    m = b.cols();
    plan.segment_allocation = solve_budget_allocation(b, budget);
    if (offers.empty()) {
      for (double v : b.values) offers.push_back(OfferType{v, 0, std::nullopt});
    }
  }
  if (offers.size() != k) {
    throw std::invalid_argument("pipeline: " + std::to_string(offers.size()) +
                                " offer values given for " + std::to_string(k) +
                                " offer types");
  }
  if (subscribers.size() != m) {
    throw std::invalid_argument("pipeline: " + std::to_string(subscribers.size()) +
                                " subscriber groups for " + std::to_string(m) + " segments");
  }
  plan.combined_expected_acceptances = plan.segment_allocation.objective;
  for (std::size_t j = 0; j < m; ++j) {
    SegmentPlan seg;
    seg.segment = j;
    for (std::size_t i = 0; i < k; ++i) {
      OfferType o = offers[i];
      o.count = plan.segment_allocation.x[i][j];
      seg.catalog.offers.push_back(std::move(o));
    }
    seg.assignment = greedy_offer(subscribers[j], seg.catalog, greedy).assignment;
    plan.total_objective += seg.assignment.objective;
    plan.per_segment.push_back(std::move(seg));
  }
  return plan;
}

std::string dump_plan(const PipelinePlan& plan) {
  json doc;
  doc["schema"] = kSchemaTag;
  json x = json::array();
  for (const auto& row : plan.segment_allocation.x) x.push_back(row);
  doc["segment_allocation"] = {{"x", x},
                               {"objective", plan.segment_allocation.objective},
                               {"complete", plan.segment_allocation.complete}};
  json segs = json::array();
  for (const auto& seg : plan.per_segment) {
    json pairs = json::array();
    for (const auto& p : seg.assignment.pairs) {
      pairs.push_back({{"subscriber", p.subscriber}, {"offer", p.offer}});
    }
    segs.push_back({{"segment", seg.segment},
                    {"offers", catalog_json(seg.catalog)},
                    {"pairs", pairs},
                    {"objective", seg.assignment.objective}});
  }
  doc["segments"] = segs;
  doc["combined_expected_acceptances"] = plan.combined_expected_acceptances;
  doc["total_objective"] = plan.total_objective;
  return doc.dump(2) + "\n";
}

}  // namespace offeropt
