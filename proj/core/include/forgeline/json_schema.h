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

#ifndef FORGELINE_JSON_SCHEMA_H_
#define FORGELINE_JSON_SCHEMA_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace forgeline {

// Validator for the JSON Schema keywords the shipped schemas use: type,
// properties, required, additionalProperties (bool or schema), items, enum,
// const, minimum, maximum, minItems, maxItems, minLength, and "$ref" into
// the same document's "definitions". Unsupported keywords are ignored.
//
// Returns one message per failure, each prefixed with a JSON pointer.
std::vector<std::string> ValidateJson(const nlohmann::json& schema,
                                      const nlohmann::json& instance);

// Looks up a schema shipped with the library by file stem, e.g.
// "analyze.response" or "regen_run_log". Throws ConfigError when unknown.
const nlohmann::json& ShippedSchema(const std::string& name);
std::vector<std::string> ShippedSchemaNames();

}  // namespace forgeline

#endif  // FORGELINE_JSON_SCHEMA_H_
