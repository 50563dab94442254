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

#include "offeropt/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "offeropt/rng.hpp"

namespace offeropt {
namespace {

using json = nlohmann::json;
using Kind = FormatError::Kind;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(Kind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

void check_schema(const json& doc) {
  if (!doc.is_object()) throw FormatError(Kind::kSchema, "document must be a JSON object");
  const auto it = doc.find("schema");
  if (it == doc.end()) {
    throw FormatError(Kind::kMissingField, "missing required field \"schema\"");
  }
  if (!it->is_string() || it->get<std::string>() != kSchemaTag) {
    throw FormatError(Kind::kSchema, "schema mismatch: expected \"" +
                                         std::string(kSchemaTag) + "\", got " + it->dump());
  }
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) {
    throw FormatError(Kind::kType, where + ": expected an object");
  }
  const auto it = obj.find(name);
  if (it == obj.end()) {
    throw FormatError(Kind::kMissingField,
                      where + ": missing required field \"" + name + "\"");
  }
  return *it;
}

std::string at(const std::string& where, std::size_t index) {
  return where + "[" + std::to_string(index) + "]";
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(Kind::kType, where + ": expected a number");
  return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw FormatError(Kind::kType, where + ": expected an integer");
  return v.get<std::int64_t>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(Kind::kType, where + ": expected an array");
  return v;
}

std::vector<double> double_list(const json& v, const std::string& where) {
  std::vector<double> out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
    out.push_back(as_double(v[i], at(where, i)));
  }
  return out;
}

std::vector<std::int64_t> int_list(const json& v, const std::string& where) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
    out.push_back(as_int(v[i], at(where, i)));
  }
  return out;
}

template <typename Fn>
void with_invariant_context(const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const std::domain_error& e) {
    throw FormatError(Kind::kInvariant, where + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json subscribers_json(std::span<const Subscriber> subscribers) {
  json out = json::array();
  for (const auto& s : subscribers) {
    out.push_back({{"id", s.id}, {"p", s.p}, {"alpha", s.alpha}, {"gamma", s.gamma}});
  }
  return out;
}

std::vector<Subscriber> subscribers_from(const json& doc) {
  const json& list = as_array(field(doc, "subscribers", "document"), "subscribers");
  std::vector<Subscriber> out;
  out.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = at("subscribers", i);
    const json& item = list[i];
    Subscriber s;
    const std::int64_t id = as_int(field(item, "id", where), where + ".id");
    if (id != static_cast<std::int64_t>(i)) {
      throw FormatError(Kind::kInvariant,
                        where + ".id: ids must equal their position, got " + std::to_string(id));
    }
    s.id = static_cast<SubscriberId>(id);
    s.p = as_double(field(item, "p", where), where + ".p");
    s.alpha = as_double(field(item, "alpha", where), where + ".alpha");
    s.gamma = as_double(field(item, "gamma", where), where + ".gamma");
    with_invariant_context(where, [&] { validate(s); });
    out.push_back(s);
  }
  return out;
}

json matrix_json(const auto& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back(row);
  return out;
}

ProbMatrix prob_matrix(const json& v, const std::string& where) {
  ProbMatrix out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
    out.push_back(double_list(v[i], at(where, i)));
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string dump_instance(const Instance& instance, const GeneratorConfig* generator) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["subscribers"] = subscribers_json(instance.subscribers);
  json offers = json::array();
  for (const auto& o : instance.catalog.offers) {
    json item;
    if (o.label) item["label"] = *o.label;
    item["value"] = o.value;
    item["count"] = o.count;
    offers.push_back(item);
  }
  doc["offers"] = offers;
  if (generator) {
    doc["generator"] = {
        {"prng", Xoshiro256::kName},
        {"seed", generator->seed},
        {"n", generator->n},
        {"k", generator->k},
        {"p_range", {generator->p_range.lo, generator->p_range.hi}},
        {"alpha_range", {generator->alpha_range.lo, generator->alpha_range.hi}},
        {"gamma_range", {generator->gamma_range.lo, generator->gamma_range.hi}},
        {"delta_base", generator->delta_base},
        {"delta_multiplier", generator->delta_multiplier},
        {"coverage", generator->coverage},
    };
  }
  return dump(doc);
}

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  check_schema(doc);
  Instance out;
  out.subscribers = subscribers_from(doc);
  const json& offers = as_array(field(doc, "offers", "document"), "offers");
  for (std::size_t j = 0; j < offers.size(); ++j) {
    const std::string where = at("offers", j);
    const json& item = offers[j];
    OfferType o;
    o.value = as_double(field(item, "value", where), where + ".value");
    o.count = as_int(field(item, "count", where), where + ".count");
    if (const auto it = item.find("label"); it != item.end()) {
      if (!it->is_string()) throw FormatError(Kind::kType, where + ".label: expected a string");
      o.label = it->get<std::string>();
    }
    with_invariant_context(where, [&] { validate(o); });
    out.catalog.offers.push_back(std::move(o));
  }
  if (out.catalog.offers.empty()) {
    throw FormatError(Kind::kInvariant, "offers: at least one offer type is required");
  }
  return out;
}

std::vector<Subscriber> parse_subscribers(std::string_view text) {
  const json doc = parse_json(text);
  check_schema(doc);
  return subscribers_from(doc);
}

std::string dump_assignment(const Assignment& assignment) {
  json doc;
  doc["schema"] = kSchemaTag;
  json pairs = json::array();
  for (const auto& p : assignment.pairs) {
    pairs.push_back({{"subscriber", p.subscriber}, {"offer", p.offer}});
  }
  doc["pairs"] = pairs;
  doc["objective"] = assignment.objective;
  return dump(doc);
}

Assignment parse_assignment(std::string_view text) {
  const json doc = parse_json(text);
  check_schema(doc);
  Assignment out;
  const json& pairs = as_array(field(doc, "pairs", "document"), "pairs");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string where = at("pairs", i);
    const std::int64_t sub = as_int(field(pairs[i], "subscriber", where), where + ".subscriber");
    const std::int64_t off = as_int(field(pairs[i], "offer", where), where + ".offer");
    if (sub < 0 || off < 0 || sub > UINT32_MAX || off > UINT32_MAX) {
      throw FormatError(Kind::kInvariant, where + ": indices must be non-negative 32-bit");
    }
    out.pairs.push_back({static_cast<SubscriberId>(sub), static_cast<OfferIndex>(off)});
  }
  out.objective = as_double(field(doc, "objective", "document"), "objective");
  return out;
}

std::string dump_segment_document(const SegmentDocument& doc_in) {
  json doc;
  doc["schema"] = kSchemaTag;
  if (const auto* counts = std::get_if<SegmentInstance>(&doc_in)) {
    doc["mode"] = "counts";
    doc["probs"] = matrix_json(counts->probs);
    doc["row_caps"] = counts->row_caps;
    doc["col_caps"] = counts->col_caps;
  } else {
    const auto& budget = std::get<BudgetInstance>(doc_in);
    doc["mode"] = "budget";
    doc["probs"] = matrix_json(budget.probs);
    doc["values"] = budget.values;
    doc["row_budgets"] = budget.row_budgets;
    doc["col_budgets"] = budget.col_budgets;
  }
  return dump(doc);
}

SegmentDocument parse_segment_document(std::string_view text) {
  const json doc = parse_json(text);
  check_schema(doc);
  const json& mode = field(doc, "mode", "document");
  if (!mode.is_string()) throw FormatError(Kind::kType, "mode: expected a string");
  const ProbMatrix probs = prob_matrix(field(doc, "probs", "document"), "probs");
  if (mode == "counts") {
    SegmentInstance out;
    out.probs = probs;
    out.row_caps = int_list(field(doc, "row_caps", "document"), "row_caps");
    out.col_caps = int_list(field(doc, "col_caps", "document"), "col_caps");
    with_invariant_context("segments", [&] { validate(out); });
    return out;
  }
  if (mode == "budget") {
    BudgetInstance out;
    out.probs = probs;
    out.values = double_list(field(doc, "values", "document"), "values");
    out.row_budgets = double_list(field(doc, "row_budgets", "document"), "row_budgets");
    out.col_budgets = double_list(field(doc, "col_budgets", "document"), "col_budgets");
    with_invariant_context("segments", [&] { validate(out); });
    return out;
  }
  throw FormatError(Kind::kSchema,
                    "mode: expected \"counts\" or \"budget\", got " + mode.dump());
}

std::string dump_allocation(const AllocationMatrix& allocation) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["x"] = matrix_json(allocation.x);
  doc["objective"] = allocation.objective;
  doc["complete"] = allocation.complete;
  return dump(doc);
}

AllocationMatrix parse_allocation(std::string_view text) {
  const json doc = parse_json(text);
  check_schema(doc);
  AllocationMatrix out;
  const json& x = as_array(field(doc, "x", "document"), "x");
  for (std::size_t i = 0; i < x.size(); ++i) out.x.push_back(int_list(x[i], at("x", i)));
  out.objective = as_double(field(doc, "objective", "document"), "objective");
  if (const auto it = doc.find("complete"); it != doc.end()) {
    if (!it->is_boolean()) throw FormatError(Kind::kType, "complete: expected a boolean");
    out.complete = it->get<bool>();
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(Kind::kIo, "cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(Kind::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw FormatError(Kind::kIo, "failed writing " + path.string());
}

namespace {

template <typename Fn>
auto in_file(const std::filesystem::path& path, Fn&& fn) {
  const std::string text = read_text_file(path);
  try {
    return fn(text);
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace

Instance read_instance(const std::filesystem::path& path) {
  return in_file(path, [](std::string_view t) { return parse_instance(t); });
}

void write_instance(const std::filesystem::path& path, const Instance& instance,
                    const GeneratorConfig* generator) {
  write_text_file(path, dump_instance(instance, generator));
}

std::vector<Subscriber> read_subscribers(const std::filesystem::path& path) {
  return in_file(path, [](std::string_view t) { return parse_subscribers(t); });
}

Assignment read_assignment(const std::filesystem::path& path) {
  return in_file(path, [](std::string_view t) { return parse_assignment(t); });
}

void write_assignment(const std::filesystem::path& path, const Assignment& assignment) {
  write_text_file(path, dump_assignment(assignment));
}

SegmentDocument read_segment_instance(const std::filesystem::path& path) {
  return in_file(path, [](std::string_view t) { return parse_segment_document(t); });
}

void write_segment_instance(const std::filesystem::path& path, const SegmentDocument& doc) {
  write_text_file(path, dump_segment_document(doc));
}

AllocationMatrix read_allocation(const std::filesystem::path& path) {
  return in_file(path, [](std::string_view t) { return parse_allocation(t); });
}

void write_allocation(const std::filesystem::path& path, const AllocationMatrix& allocation) {
  write_text_file(path, dump_allocation(allocation));
}

std::string dump_trace_csv(const GreedyTrace& trace) {
  std::string out = "step,subscriber,offer,revenue\n";
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& step = trace.steps[s];
    out += std::to_string(s) + "," + std::to_string(step.subscriber) + "," +
           std::to_string(step.offer) + "," + format_double(step.revenue) + "\n";
  }
  return out;
}

}  // namespace offeropt
