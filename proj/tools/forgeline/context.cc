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

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.h"
#include "forgeline/error.h"
#include "forgeline/image.h"
#include "forgeline/manifest.h"

namespace forgeline::cli {

using nlohmann::json;

namespace {

std::string Normalize(std::string key) {
  for (char& c : key)
    if (c == '-') c = '_';
  return key;
}

std::string ReadText(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void WriteString(const std::string& path, const std::string& text) {
  WriteFileBytes(path, {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

}  // namespace

Context::Context(std::string command, std::vector<std::string> argv, RawFlags flags)
    : command_(std::move(command)), argv_(std::move(argv)), flags_(std::move(flags)) {
  if (const auto* path = FlagValue("config")) {
    const std::string text = ReadText(path->back());
    config_ = json::parse(text, nullptr, false);
    if (config_.is_discarded() || !config_.is_object())
      throw UsageError("config file " + path->back() + " is not a JSON object");
    Record("config", path->back());
  }
  out_dir_ = Str("out", "forgeline_out");
  std::filesystem::create_directories(out_dir_);
}

const std::vector<std::string>* Context::FlagValue(const std::string& key) const {
  auto it = flags_.values.find(key);
  if (it == flags_.values.end() || it->second.empty()) return nullptr;
  return &it->second;
}

const json* Context::ConfigValue(const std::string& key) const {
  for (const std::string& k : {key, Normalize(key)}) {
    auto it = config_.find(k);
    if (it != config_.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

void Context::Record(const std::string& key, json value) {
  resolved_[Normalize(key)] = std::move(value);
}

std::optional<std::string> Context::Str(const std::string& key) {
  std::optional<std::string> v;
  if (const auto* f = FlagValue(key)) {
    v = f->back();
  } else if (const json* c = ConfigValue(key)) {
    if (!c->is_string()) throw UsageError("config key " + key + " must be a string");
    v = c->get<std::string>();
  }
  if (v) Record(key, *v);
  return v;
}

std::string Context::Str(const std::string& key, const std::string& fallback) {
  auto v = Str(key);
  if (!v) Record(key, fallback);
  return v.value_or(fallback);
}

std::string Context::RequireStr(const std::string& key) {
  auto v = Str(key);
  if (!v) throw UsageError("--" + key + " is required");
  return *v;
}

std::optional<int64_t> Context::Int(const std::string& key) {
  std::optional<int64_t> v;
  if (const auto* f = FlagValue(key)) {
    const std::string& s = f->back();
    size_t used = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw UsageError("--" + key + " expects an integer, got \"" + s + "\"");
  } else if (const json* c = ConfigValue(key)) {
    if (!c->is_number_integer())
      throw UsageError("config key " + key + " must be an integer");
    v = c->get<int64_t>();
  }
  if (v) Record(key, *v);
  return v;
}

int64_t Context::Int(const std::string& key, int64_t fallback) {
  auto v = Int(key);
  if (!v) Record(key, fallback);
  return v.value_or(fallback);
}

uint64_t Context::Seed() {
  const int64_t s = Int("seed", 0);
  if (s < 0) throw UsageError("--seed must be non-negative");
  return static_cast<uint64_t>(s);
}

std::optional<double> Context::Double(const std::string& key) {
  std::optional<double> v;
  if (const auto* f = FlagValue(key)) {
    const std::string& s = f->back();
    size_t used = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw UsageError("--" + key + " expects a number, got \"" + s + "\"");
  } else if (const json* c = ConfigValue(key)) {
    if (!c->is_number()) throw UsageError("config key " + key + " must be a number");
    v = c->get<double>();
  }
  if (v) Record(key, *v);
  return v;
}

double Context::Double(const std::string& key, double fallback) {
  auto v = Double(key);
  if (!v) Record(key, fallback);
  return v.value_or(fallback);
}

bool Context::Switch(const std::string& key) {
  bool v = false;
  if (auto it = flags_.switches.find(key); it != flags_.switches.end() && it->second) {
    v = true;
  } else if (const json* c = ConfigValue(key)) {
    if (!c->is_boolean()) throw UsageError("config key " + key + " must be a boolean");
    v = c->get<bool>();
  }
  Record(key, v);
  return v;
}

std::vector<std::string> Context::List(const std::string& key) {
  std::vector<std::string> out;
  if (const auto* f = FlagValue(key)) {
    for (const auto& value : *f) {
      std::stringstream ss(value);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    }
  } else if (const json* c = ConfigValue(key)) {
    if (c->is_string()) {
      out.push_back(c->get<std::string>());
    } else if (c->is_array()) {
      for (const auto& item : *c) {
        if (!item.is_string())
          throw UsageError("config key " + key + " must hold strings");
        out.push_back(item.get<std::string>());
      }
    } else {
      throw UsageError("config key " + key + " must be a string or array");
    }
  }
  if (!out.empty()) Record(key, out);
  return out;
}

std::string Context::OutPath(const std::string& name) const {
  return out_dir_ + "/" + name;
}

BackendConfig Context::Backends() {
  BackendConfig config;
  std::string source;
  if (const auto* f = FlagValue("backends")) {
    source = f->back();
  } else if (const char* env = std::getenv("FORGELINE_BACKENDS"); env && *env) {
    source = env;
  }
  if (!source.empty()) {
    config = source == "mock" ? BackendConfig::AllMock() : BackendConfig::Load(source);
  } else if (const json* c = ConfigValue("backends")) {
    if (c->is_string()) {
      source = c->get<std::string>();
      config = source == "mock" ? BackendConfig::AllMock() : BackendConfig::Load(source);
    } else {
      source = "<inline>";
      config = BackendConfig::FromJson(*c);
    }
  } else {
    source = "mock";
    config = BackendConfig::AllMock();
  }
  config.ApplyEnvOverrides();
  Record("backends", source);
  backends_ = config.ToJson();
  return config;
}

DatasetManifest Context::Manifest() { return LoadValidManifest(RequireStr("manifest")); }

void Context::WriteJson(const std::string& name, const json& j) const {
  WriteString(OutPath(name), j.dump(2) + "\n");
}

void Context::WriteText(const std::string& name, const std::string& text) const {
  WriteString(OutPath(name), text);
}

void Context::WriteEcho() const {
  WriteJson("config_echo.json", {{"schema_version", 1},
                                 {"kind", "config_echo"},
                                 {"command", command_},
                                 {"argv", argv_},
                                 {"options", resolved_},
                                 {"backends", backends_},
                                 {"version", "0.1.0"}});
}

std::vector<json> ReadJsonl(const std::string& path) {
  const std::string text = ReadText(path);
  std::vector<json> out;
  std::stringstream ss(text);
  size_t line_no = 0;
  for (std::string line; std::getline(ss, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": not a JSON object");
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace forgeline::cli
