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

#include <map>
#include <mutex>

#include "forgeline/assets.h"
#include "forgeline/error.h"

namespace forgeline {

using nlohmann::json;

namespace {

bool MatchesType(const std::string& type, const json& v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() &&
           v.get<double>() == static_cast<double>(static_cast<int64_t>(v.get<double>()));
  }
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void Check(const json& schema, const json& v, const std::string& ptr) {
    if (!schema.is_object()) return;
    if (auto it = schema.find("$ref"); it != schema.end()) {
      const std::string ref = it->get<std::string>();
      const std::string prefix = "#/definitions/";
      if (!ref.starts_with(prefix) ||
          !root_.contains("definitions") ||
          !root_["definitions"].contains(ref.substr(prefix.size()))) {
        Fail(ptr, "unresolvable $ref " + ref);
        return;
      }
      Check(root_["definitions"][ref.substr(prefix.size())], v, ptr);
    }
    if (auto it = schema.find("type"); it != schema.end()) {
      bool ok = false;
      if (it->is_string()) {
        ok = MatchesType(it->get<std::string>(), v);
      } else {
        for (const auto& t : *it) ok = ok || MatchesType(t.get<std::string>(), v);
      }
      if (!ok) {
        Fail(ptr, "expected type " + it->dump());
        return;
      }
    }
    if (auto it = schema.find("enum"); it != schema.end()) {
      bool ok = false;
      for (const auto& e : *it) ok = ok || e == v;
      if (!ok) Fail(ptr, "value " + v.dump() + " not in enum");
    }
    if (auto it = schema.find("const"); it != schema.end() && *it != v)
      Fail(ptr, "expected const " + it->dump());
    if (v.is_number()) {
      const double x = v.get<double>();
      if (auto it = schema.find("minimum"); it != schema.end() && x < it->get<double>())
        Fail(ptr, "below minimum " + it->dump());
      if (auto it = schema.find("maximum"); it != schema.end() && x > it->get<double>())
        Fail(ptr, "above maximum " + it->dump());
    }
    if (v.is_string()) {
      if (auto it = schema.find("minLength");
          it != schema.end() && v.get<std::string>().size() < it->get<size_t>())
        Fail(ptr, "shorter than minLength " + it->dump());
    }
    if (v.is_array()) {
      if (auto it = schema.find("minItems"); it != schema.end() && v.size() < it->get<size_t>())
        Fail(ptr, "fewer than minItems " + it->dump());
      if (auto it = schema.find("maxItems"); it != schema.end() && v.size() > it->get<size_t>())
        Fail(ptr, "more than maxItems " + it->dump());
      if (auto it = schema.find("items"); it != schema.end()) {
        for (size_t i = 0; i < v.size(); ++i)
          Check(*it, v[i], ptr + "/" + std::to_string(i));
      }
    }
    if (v.is_object()) {
      if (auto it = schema.find("required"); it != schema.end()) {
        for (const auto& key : *it) {
          if (!v.contains(key.get<std::string>()))
            Fail(ptr, "missing required property \"" + key.get<std::string>() + "\"");
        }
      }
      const json* props = nullptr;
      if (auto it = schema.find("properties"); it != schema.end()) props = &*it;
      const auto extra = schema.find("additionalProperties");
      for (const auto& [key, value] : v.items()) {
        if (props && props->contains(key)) {
          Check((*props)[key], value, ptr + "/" + key);
        } else if (extra != schema.end()) {
          if (extra->is_boolean() && !extra->get<bool>()) {
            Fail(ptr, "unexpected property \"" + key + "\"");
          } else if (extra->is_object()) {
            Check(*extra, value, ptr + "/" + key);
          }
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  void Fail(const std::string& ptr, const std::string& msg) {
    errors.push_back((ptr.empty() ? "/" : ptr) + ": " + msg);
  }

  const json& root_;
};

}  // namespace

std::vector<std::string> ValidateJson(const json& schema, const json& instance) {
  Validator validator(schema);
  validator.Check(schema, instance, "");
  return std::move(validator.errors);
}

namespace {

const std::map<std::string, json>& SchemaTable() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> t;
    constexpr std::string_view kSuffix = ".schema.json";
    for (const auto& asset : SchemaAssets()) {
      std::string name(asset.name);
      if (name.ends_with(kSuffix)) name.resize(name.size() - kSuffix.size());
      t.emplace(name, json::parse(asset.content));
    }
    return t;
  }();
  return table;
}

}  // namespace

const json& ShippedSchema(const std::string& name) {
  const auto& table = SchemaTable();
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown schema " + name);
  return it->second;
}

std::vector<std::string> ShippedSchemaNames() {
  std::vector<std::string> names;
  for (const auto& [name, schema] : SchemaTable()) names.push_back(name);
  return names;
}

}  // namespace forgeline
