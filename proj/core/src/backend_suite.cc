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

#include "forgeline/backend_suite.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include "forgeline/error.h"
#include "forgeline/http_backend.h"
#include "forgeline/image.h"

namespace forgeline {

using nlohmann::json;

namespace {

constexpr std::string_view DefaultMockTag(Role role) {
  switch (role) {
    case Role::kAnalyzer:
      return "oracle";
    case Role::kGenerator:
      return "progressive";
    case Role::kInpainter:
      return "mock";  // resolved through MockConfig::inpainter_kind
    case Role::kReviser:
      return "echo";
    case Role::kCaptioner:
      return "constant";
    case Role::kEmbedder:
      return "hash";
    case Role::kScorer:
      return "mock";  // resolved through MockConfig::scorer_kind
    case Role::kJudge:
      return "constant";
  }
  return "mock";
}

EndpointConfig ParseEndpoint(const json& j, const EndpointConfig& defaults) {
  EndpointConfig c = defaults;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.starts_with("http")) {
      c.url = s;
    } else {
      c.mock = s.starts_with("mock:") ? s.substr(5) : s;
    }
    return c;
  }
  c.url = j.value("url", "");
  c.mock = j.value("mock", c.url.empty() ? "mock" : "");
  c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
  c.attempts = j.value("attempts", c.attempts);
  if (j.contains("backoff_ms")) c.backoff_ms = j["backoff_ms"].get<std::vector<int>>();
  c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
  return c;
}

std::shared_ptr<const FixtureStore> NeedStore(
    std::shared_ptr<const FixtureStore>& store, const DatasetManifest* manifest,
    Role role) {
  if (!store) {
    if (!manifest)
      throw ConfigError(std::string("mock ") + std::string(ToString(role)) +
                        " needs a manifest");
    store = std::make_shared<FixtureStore>(*manifest);
  }
  return store;
}

}  // namespace

std::string EndpointConfig::Describe() const {
  return is_mock() ? "mock:" + mock : url;
}

json EndpointConfig::ToJson() const {
  json j = {{"timeout_ms", timeout_ms},
            {"attempts", attempts},
            {"backoff_ms", backoff_ms},
            {"max_in_flight", max_in_flight}};
  if (is_mock()) {
    j["mock"] = mock;
  } else {
    j["url"] = url;
  }
  return j;
}

BackendConfig BackendConfig::AllMock(const MockConfig& mock) {
  BackendConfig c;
  c.mock = mock;
  for (Role r : kAllRoles) c.endpoints[r].mock = std::string(DefaultMockTag(r));
  return c;
}

BackendConfig BackendConfig::FromJson(const json& j) {
  try {
    BackendConfig c;
    if (j.contains("mock")) c.mock = MockConfig::FromJson(j["mock"]);
    EndpointConfig defaults;
    if (j.contains("defaults")) {
      defaults = ParseEndpoint(j["defaults"], defaults);
      defaults.url.clear();
      defaults.mock = "mock";
    }
    if (!j.contains("endpoints")) {
      BackendConfig all = AllMock(c.mock);
      for (auto& [role, ep] : all.endpoints) {
        const std::string tag = ep.mock;
        ep = defaults;
        ep.mock = tag;
      }
      return all;
    }
    for (const auto& [name, value] : j["endpoints"].items()) {
      const auto role = ParseRole(name);
      if (!role) throw ConfigError("unknown backend role \"" + name + "\"");
      EndpointConfig ep = ParseEndpoint(value, defaults);
      if (ep.is_mock() && ep.mock == "mock") ep.mock = std::string(DefaultMockTag(*role));
      c.endpoints[*role] = std::move(ep);
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad backend config: ") + e.what());
  }
}

BackendConfig BackendConfig::Load(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  json j = json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (j.is_discarded()) throw ConfigError("backend config " + path + " is not JSON");
  return FromJson(j);
}

void BackendConfig::ApplyEnvOverrides() {
  for (Role r : kAllRoles) {
    std::string var = "FORGELINE_" + std::string(ToString(r)) + "_URL";
    std::transform(var.begin(), var.end(), var.begin(),
                   [](unsigned char ch) { return std::toupper(ch); });
    if (const char* url = std::getenv(var.c_str()); url && *url) {
      auto& ep = endpoints[r];
      ep.url = url;
      ep.mock.clear();
    }
  }
}

json BackendConfig::ToJson() const {
  json eps = json::object();
  for (const auto& [role, ep] : endpoints) eps[std::string(ToString(role))] = ep.ToJson();
  return {{"schema_version", 1}, {"mock", mock.ToJson()}, {"endpoints", eps}};
}

bool BackendSuite::Has(Role role) const {
  switch (role) {
    case Role::kAnalyzer:
      return analyzer != nullptr;
    case Role::kGenerator:
      return generator != nullptr;
    case Role::kInpainter:
      return inpainter != nullptr;
    case Role::kReviser:
      return reviser != nullptr;
    case Role::kCaptioner:
      return captioner != nullptr;
    case Role::kEmbedder:
      return embedder != nullptr;
    case Role::kScorer:
      return scorer != nullptr;
    case Role::kJudge:
      return judge != nullptr;
  }
  return false;
}

void BackendSuite::Require(std::span<const Role> roles) const {
  std::string missing;
  for (Role r : roles) {
    if (Has(r)) continue;
    if (!missing.empty()) missing += ", ";
    missing += ToString(r);
  }
  if (!missing.empty()) throw ConfigError("missing required endpoint(s): " + missing);
}

json BackendSuite::Describe() const {
  json j = json::object();
  for (const auto& [role, desc] : descriptors) j[std::string(ToString(role))] = desc;
  return j;
}

BackendSuite BuildSuite(const BackendConfig& config,
                        const DatasetManifest* manifest,
                        std::span<const Role> required,
                        std::span<const Role> optional) {
  BackendSuite suite;
  std::shared_ptr<const FixtureStore> store;
  auto build = [&](Role role, const EndpointConfig& ep) {
    suite.descriptors[role] = ep.Describe();
    const MockConfig& mc = config.mock;
    const bool http = !ep.is_mock();
    auto bad_tag = [&] {
      return ConfigError("unknown mock \"" + ep.mock + "\" for " +
                         std::string(ToString(role)));
    };
    switch (role) {
      case Role::kAnalyzer:
        if (http) {
          suite.analyzer = MakeHttpAnalyzer(ep);
        } else if (ep.mock == "oracle") {
          suite.analyzer = std::make_shared<OracleAnalyzer>(
              NeedStore(store, manifest, role), mc);
        } else {
          throw bad_tag();
        }
        break;
      case Role::kGenerator:
        if (http) {
          suite.generator = MakeHttpGenerator(ep);
        } else if (ep.mock == "progressive") {
          suite.generator = std::make_shared<ProgressiveGenerator>(
              NeedStore(store, manifest, role));
        } else {
          throw bad_tag();
        }
        break;
      case Role::kInpainter: {
        if (http) {
          suite.inpainter = MakeHttpInpainter(ep);
          break;
        }
        auto kind = ep.mock == "mock" ? std::optional(mc.inpainter_kind)
                                      : ParseInpainterKind(ep.mock);
        if (!kind) throw bad_tag();
        suite.descriptors[role] = "mock:" + std::string(ToString(*kind));
        if (*kind == InpainterKind::kIdentity) {
          suite.inpainter = std::make_shared<IdentityInpainter>();
        } else if (*kind == InpainterKind::kConstantFill) {
          suite.inpainter = std::make_shared<ConstantFillInpainter>(mc.fill_color);
        } else {
          auto s = NeedStore(store, manifest, role);
          if (!s->AllFakesHaveReferences())
            throw ConfigError(
                "perfect inpainter needs a reference image for every fake entry");
          suite.inpainter = std::make_shared<PerfectInpainter>(s);
        }
        break;
      }
      case Role::kReviser:
        if (http) {
          suite.reviser = MakeHttpReviser(ep);
        } else if (ep.mock == "echo") {
          suite.reviser = std::make_shared<EchoReviser>();
        } else {
          throw bad_tag();
        }
        break;
      case Role::kCaptioner:
        if (http) {
          suite.captioner = MakeHttpCaptioner(ep);
        } else if (ep.mock == "constant") {
          suite.captioner = std::make_shared<ConstantCaptioner>(mc.caption);
        } else {
          throw bad_tag();
        }
        break;
      case Role::kEmbedder:
        if (http) {
          suite.embedder = MakeHttpEmbedder(ep);
        } else if (ep.mock == "hash") {
          suite.embedder = std::make_shared<HashEmbedder>();
        } else {
          throw bad_tag();
        }
        break;
      case Role::kScorer: {
        if (http) {
          suite.scorer = MakeHttpScorer(ep);
          break;
        }
        auto kind = ep.mock == "mock" ? std::optional(mc.scorer_kind)
                                      : ParseScorerKind(ep.mock);
        if (!kind) throw bad_tag();
        suite.descriptors[role] = "mock:" + std::string(ToString(*kind));
        if (*kind == ScorerKind::kArea) {
          suite.scorer =
              std::make_shared<AreaScorer>(NeedStore(store, manifest, role));
        } else {
          suite.scorer = std::make_shared<ConstantScorer>(mc.constant_score);
        }
        break;
      }
      case Role::kJudge:
        if (http) {
          suite.judge = MakeHttpJudge(ep);
        } else if (ep.mock == "constant") {
          suite.judge = std::make_shared<ConstantJudge>(mc.judge_response);
        } else {
          throw bad_tag();
        }
        break;
    }
  };
  for (Role r : required) {
    auto it = config.endpoints.find(r);
    if (it == config.endpoints.end()) continue;
    build(r, it->second);
  }
  for (Role r : optional) {
    auto it = config.endpoints.find(r);
    if (it == config.endpoints.end() || suite.Has(r)) continue;
    build(r, it->second);
  }
  suite.Require(required);
  return suite;
}

BackendSuite BuildMockSuite(const DatasetManifest& manifest,
                            const MockConfig& config) {
  return BuildMockSuite(manifest, config, kAllRoles);
}

BackendSuite BuildMockSuite(const DatasetManifest& manifest,
                            const MockConfig& config,
                            std::span<const Role> roles) {
  return BuildSuite(BackendConfig::AllMock(config), &manifest, roles);
}

}  // namespace forgeline
