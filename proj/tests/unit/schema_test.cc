// Copyright 2026 The Forgeline Authors.
//
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

#include "forgeline/json_schema.h"

#include <gtest/gtest.h>

#include "forgeline/assets.h"
#include "forgeline/error.h"

namespace forgeline {
namespace {

using nlohmann::json;

TEST(JsonSchemaTest, Keywords) {
  const json schema = json::parse(R"({
    "type": "object",
    "required": ["a"],
    "additionalProperties": false,
    "properties": {
      "a": {"type": "integer", "minimum": 0, "maximum": 5},
      "b": {"type": "array", "minItems": 1, "maxItems": 2, "items": {"$ref": "#/definitions/s"}},
      "c": {"enum": ["x", "y"]},
      "d": {"const": true},
      "e": {"type": ["string", "null"]}
    },
    "definitions": {"s": {"type": "string", "minLength": 2}}
  })");
  EXPECT_TRUE(ValidateJson(schema, {{"a", 3}, {"b", {"ok"}}, {"c", "x"}, {"d", true}, {"e", nullptr}}).empty());
  EXPECT_TRUE(ValidateJson(schema, {{"a", 3.0}}).empty());
  EXPECT_FALSE(ValidateJson(schema, json::object()).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 6}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", -1}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1.5}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1}, {"z", 1}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1}, {"b", json::array()}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1}, {"b", {"a", "bb", "cc"}}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1}, {"b", {"q"}}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1}, {"c", "z"}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1}, {"d", false}}).empty());
  EXPECT_FALSE(ValidateJson(schema, {{"a", 1}, {"e", 3}}).empty());
}

TEST(JsonSchemaTest, ErrorsCarryPointers) {
  const json schema = {{"properties", {{"x", {{"type", "string"}}}}}};
  const auto errors = ValidateJson(schema, {{"x", 1}});
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].rfind("/x:", 0), 0u) << errors[0];
}

TEST(ShippedSchemaTest, WireAndReportSchemasPresent) {
  const auto names = ShippedSchemaNames();
  for (const char* role : {"analyze", "generate", "inpaint", "revise", "caption", "embed",
                           "score", "judge"}) {
    EXPECT_NO_THROW(ShippedSchema(std::string(role) + ".request"));
    EXPECT_NO_THROW(ShippedSchema(std::string(role) + ".response"));
  }
  for (const char* name : {"health.response", "regen_run_log", "inpaint_run_log", "seg_report",
                           "text_report", "robustness_report", "detection_report",
                           "growth_report", "curation_report", "validation_report",
                           "stats_report", "cluster_report", "sample_report", "config_echo",
                           "backend_config", "manifest_entry"})
    EXPECT_NO_THROW(ShippedSchema(name)) << name;
  EXPECT_THROW(ShippedSchema("nope"), ConfigError);
}

TEST(ShippedSchemaTest, EverySchemaIsTyped) {
  for (const auto& name : ShippedSchemaNames()) {
    const json& s = ShippedSchema(name);
    EXPECT_TRUE(s.is_object()) << name;
    EXPECT_TRUE(s.contains("type") || s.contains("$ref")) << name;
  }
}

TEST(AssetsTest, PromptsShipVerbatim) {
  const auto prior = PromptAsset(kArtifactPriorAsset);
  const auto curation = PromptAsset(kCurationPromptAsset);
  EXPECT_FALSE(prior.empty());
  EXPECT_NE(curation.find("Rejected[Realism]"), std::string_view::npos);
  EXPECT_NE(curation.find("Acceptable"), std::string_view::npos);
  EXPECT_EQ(PromptAssets().size(), 2u);
  EXPECT_THROW(PromptAsset("missing.txt"), ConfigError);
}

}  // namespace
}  // namespace forgeline
