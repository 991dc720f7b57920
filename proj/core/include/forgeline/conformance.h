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

#ifndef FORGELINE_CONFORMANCE_H_
#define FORGELINE_CONFORMANCE_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/backend_suite.h"

namespace forgeline {

struct ConformanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Protocol checks against a live endpoint. Every role gets a /health check;
// the embedder additionally gets: advertised dim, schema-valid /embed
// answer of that dim, repeat-call determinism within 1e-6, and
// CSS(text, text) == 100. Transport failures become failed checks.
std::vector<ConformanceCheck> RunConformance(Role role,
                                             const EndpointConfig& endpoint);

nlohmann::json ConformanceToJson(const std::vector<ConformanceCheck>& checks);

}  // namespace forgeline

#endif  // FORGELINE_CONFORMANCE_H_
