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

#ifndef FORGELINE_BACKEND_SUITE_H_
#define FORGELINE_BACKEND_SUITE_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"
#include "forgeline/backends.h"
#include "forgeline/mocks.h"

namespace forgeline {

// How to reach one role: an HTTP base URL or a mock tag.
struct EndpointConfig {
  std::string url;   // "http://host:port[/prefix]"
  std::string mock;  // "oracle", "echo", "hash", "perfect", ... or "mock"
  int timeout_ms = 30000;
  int attempts = 3;
  std::vector<int> backoff_ms = {500, 1000, 2000};
  int max_in_flight = 4;

  bool is_mock() const { return url.empty(); }
  std::string Describe() const;  // "http://..." or "mock:oracle"
  nlohmann::json ToJson() const;
};

struct BackendConfig {
  std::map<Role, EndpointConfig> endpoints;
  MockConfig mock;

  // Every role served by its default mock.
  static BackendConfig AllMock(const MockConfig& mock = {});

  // Parses the backend config file format (see docs/backends.md). When the
  // "endpoints" object is absent every role is mocked.
  static BackendConfig FromJson(const nlohmann::json& j);
  // Reads a JSON file. Throws IoError / ConfigError.
  static BackendConfig Load(const std::string& path);

  // FORGELINE_<ROLE>_URL environment variables switch roles to HTTP.
  void ApplyEnvOverrides();

  nlohmann::json ToJson() const;
};

// The set of role implementations handed to a pipeline. Null entries are
// roles that were not requested.
struct BackendSuite {
  std::shared_ptr<Analyzer> analyzer;
  std::shared_ptr<Generator> generator;
  std::shared_ptr<Inpainter> inpainter;
  std::shared_ptr<Reviser> reviser;
  std::shared_ptr<Captioner> captioner;
  std::shared_ptr<Embedder> embedder;
  std::shared_ptr<Scorer> scorer;
  std::shared_ptr<Judge> judge;
  std::map<Role, std::string> descriptors;

  bool Has(Role role) const;
  // Throws ConfigError naming every missing role.
  void Require(std::span<const Role> roles) const;
  nlohmann::json Describe() const;
};

// Builds exactly the requested roles. Mock roles that need fixtures take
// them from `manifest`; a missing manifest or, for the perfect inpainter,
// missing reference images is a ConfigError. Required roles absent from the
// config are rejected.
BackendSuite BuildSuite(const BackendConfig& config,
                        const DatasetManifest* manifest,
                        std::span<const Role> required,
                        std::span<const Role> optional = {});

// All-mock suite over the manifest, deterministic under config.seed.
BackendSuite BuildMockSuite(const DatasetManifest& manifest,
                            const MockConfig& config);
BackendSuite BuildMockSuite(const DatasetManifest& manifest,
                            const MockConfig& config,
                            std::span<const Role> roles);

}  // namespace forgeline

#endif  // FORGELINE_BACKEND_SUITE_H_
