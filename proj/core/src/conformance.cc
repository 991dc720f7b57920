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

#include "forgeline/conformance.h"

#include <cmath>

#include "forgeline/error.h"
#include "forgeline/http_backend.h"
#include "forgeline/text_metrics.h"

namespace forgeline {

std::vector<ConformanceCheck> RunConformance(Role role,
                                             const EndpointConfig& endpoint) {
  std::vector<ConformanceCheck> checks;
  auto run = [&](const std::string& name, auto&& body) {
    ConformanceCheck check{name, false, ""};
    try {
      check.detail = body();
      check.passed = true;
    } catch (const std::exception& e) {
      check.detail = e.what();
    }
    checks.push_back(std::move(check));
    return checks.back().passed;
  };

  HttpEndpoint ep(role, endpoint);
  int dim = 0;
  if (!run("health", [&] {
        const auto h = ep.Health();
        dim = h.value("dim", 0);
        return h.dump();
      }))
    return checks;
  if (role != Role::kEmbedder) return checks;

  run("advertised_dim", [&] {
    if (dim <= 0) throw ProtocolError(ep.identity(), "/health has no positive dim");
    return "dim=" + std::to_string(dim);
  });
  auto embedder = MakeHttpEmbedder(endpoint);
  const std::string text = "the left hand has six fingers";
  std::vector<double> first;
  run("embed_dim", [&] {
    first = embedder->EmbedText(text);
    if (static_cast<int>(first.size()) != dim)
      throw ProtocolError(ep.identity(), "vector length " +
                                             std::to_string(first.size()) +
                                             " != advertised " + std::to_string(dim));
    return "len=" + std::to_string(first.size());
  });
  run("embed_deterministic", [&] {
    const auto second = embedder->EmbedText(text);
    if (second.size() != first.size())
      throw ProtocolError(ep.identity(), "repeat call changed length");
    double worst = 0;
    for (size_t i = 0; i < first.size(); ++i)
      worst = std::max(worst, std::abs(first[i] - second[i]));
    if (worst > 1e-6)
      throw ProtocolError(ep.identity(), "repeat call differs by " + std::to_string(worst));
    return "max_abs_diff=" + std::to_string(worst);
  });
  run("css_identity", [&] {
    const auto css = CssScore(text, text, *embedder);
    if (std::abs(css.score - 100.0) > 1e-6)
      throw ProtocolError(ep.identity(), "CSS(text, text) = " + std::to_string(css.score));
    return "css=" + std::to_string(css.score);
  });
  return checks;
}

nlohmann::json ConformanceToJson(const std::vector<ConformanceCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  return {{"passed", all}, {"checks", arr}};
}

}  // namespace forgeline
