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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "offeropt/generator.hpp"
#include "test_util.hpp"

namespace offeropt {
namespace {

using ::testing::HasSubstr;

const char* kSmallInstance = R"({
  "schema": "offeropt/v1",
  "subscribers": [
    {"id": 0, "p": 100, "alpha": 0.5, "gamma": 0.1},
    {"id": 1, "p": 40, "alpha": 0.2, "gamma": 0.05}
  ],
  "offers": [{"label": "1GB data", "value": 10, "count": 1}]
})";

FormatError::Kind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no FormatError thrown";
  return FormatError::Kind::kIo;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceIo, ParsesSmallInstance) {
  const Instance inst = parse_instance(kSmallInstance);
  ASSERT_EQ(inst.subscribers.size(), 2u);
  EXPECT_EQ(inst.subscribers[1], (Subscriber{1, 40, 0.2, 0.05}));
  ASSERT_EQ(inst.catalog.size(), 1u);
  EXPECT_EQ(inst.catalog.offers[0].label, "1GB data");
}

TEST(InstanceIo, RoundTripIsExact) {
  GeneratorConfig g;
  g.n = 300;
  g.k = 4;
  g.seed = 8;
  Instance inst = generate_instance(g);
  inst.catalog.offers[2].label = "100 SMS";
  const std::string text = dump_instance(inst, &g);
  EXPECT_EQ(parse_instance(text), inst);
  EXPECT_EQ(dump_instance(parse_instance(text), &g), text);
  EXPECT_THAT(text, HasSubstr("xoshiro256**/splitmix64"));
}

TEST(InstanceIo, MissingAlphaNamesTheField) {
  const std::string text = R"({"schema": "offeropt/v1",
    "subscribers": [{"id": 0, "p": 1, "gamma": 0.1}],
    "offers": [{"value": 1, "count": 1}]})";
  EXPECT_EQ(kind_of([&] { parse_instance(text); }), FormatError::Kind::kMissingField);
  EXPECT_THAT(message_of([&] { parse_instance(text); }), HasSubstr("\"alpha\""));
  EXPECT_THAT(message_of([&] { parse_instance(text); }), HasSubstr("subscribers[0]"));
}

TEST(InstanceIo, AlphaOutOfRangeIsInvariantError) {
  const std::string text = R"({"schema": "offeropt/v1",
    "subscribers": [{"id": 0, "p": 1, "alpha": 1.5, "gamma": 0.1}],
    "offers": [{"value": 1, "count": 1}]})";
  EXPECT_EQ(kind_of([&] { parse_instance(text); }), FormatError::Kind::kInvariant);
}

TEST(InstanceIo, SchemaAndSyntaxErrors) {
  EXPECT_EQ(kind_of([] { parse_instance(R"({"schema": "other/v9", "subscribers": []})"); }),
            FormatError::Kind::kSchema);
  EXPECT_EQ(kind_of([] { parse_instance(R"({"subscribers": []})"); }),
            FormatError::Kind::kMissingField);
  EXPECT_EQ(kind_of([] { parse_instance("{not json"); }), FormatError::Kind::kParse);
  EXPECT_EQ(kind_of([] { parse_instance("[]"); }), FormatError::Kind::kSchema);
  EXPECT_EQ(kind_of([] {
              parse_instance(R"({"schema": "offeropt/v1",
                "subscribers": [{"id": 0, "p": "ten", "alpha": 0.1, "gamma": 0.1}],
                "offers": [{"value": 1, "count": 1}]})");
            }),
            FormatError::Kind::kType);
  EXPECT_EQ(kind_of([] {
              parse_instance(R"({"schema": "offeropt/v1",
                "subscribers": [{"id": 3, "p": 1, "alpha": 0.1, "gamma": 0.1}],
                "offers": [{"value": 1, "count": 1}]})");
            }),
            FormatError::Kind::kInvariant);
}

TEST(InstanceIo, SubscribersWithoutOffers) {
  const auto subs = parse_subscribers(R"({"schema": "offeropt/v1",
    "subscribers": [{"id": 0, "p": 1, "alpha": 0.1, "gamma": 0.1}]})");
  EXPECT_EQ(subs.size(), 1u);
}

TEST(AssignmentIo, RoundTrip) {
  Assignment a;
  a.pairs = {{3, 1}, {0, 0}};
  a.objective = 123.456789012345678;
  EXPECT_EQ(parse_assignment(dump_assignment(a)), a);
}

TEST(SegmentIo, RoundTripBothModes) {
  const SegmentDocument counts = SegmentInstance{{{0.9, 0.1}, {0.2, 0.8}}, {2, 2}, {2, 2}};
  EXPECT_EQ(parse_segment_document(dump_segment_document(counts)), counts);
  const SegmentDocument budget = BudgetInstance{{{0.7}}, {5}, {12}, {25}};
  EXPECT_EQ(parse_segment_document(dump_segment_document(budget)), budget);
}

TEST(SegmentIo, MissingMode) {
  EXPECT_EQ(kind_of([] {
              parse_segment_document(
                  R"({"schema": "offeropt/v1", "probs": [[0.5]], "row_caps": [1], "col_caps": [1]})");
            }),
            FormatError::Kind::kMissingField);
}

TEST(AllocationIo, RoundTrip) {
  AllocationMatrix a{{{2, 0}, {0, 1}}, 1.9, false};
  EXPECT_EQ(parse_allocation(dump_allocation(a)), a);
}

TEST(FileIo, ErrorsNameTheFile) {
  EXPECT_THAT(message_of([] { read_instance("/nonexistent/dir/x.json"); }),
              HasSubstr("/nonexistent/dir/x.json"));
  testing::TempDir dir("io");
  write_text_file(dir.file("bad.json"), "{");
  EXPECT_THAT(message_of([&] { read_instance(dir.file("bad.json")); }), HasSubstr("bad.json"));
}

TEST(TraceCsv, Format) {
  GreedyTrace t;
  t.steps = {{4, 1, 75.5}, {2, 0, 10.0}};
  EXPECT_EQ(dump_trace_csv(t), "step,subscriber,offer,revenue\n0,4,1,75.5\n1,2,0,10\n");
}

}  // namespace
}  // namespace offeropt
