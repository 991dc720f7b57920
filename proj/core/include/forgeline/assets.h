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

#ifndef FORGELINE_ASSETS_H_
#define FORGELINE_ASSETS_H_

#include <string>
#include <string_view>
#include <vector>

namespace forgeline {

// Text assets compiled into the library from core/assets/ and
// core/schemas/. Keys are file names ("curation_prompt.txt",
// "analyze.response.schema.json").
struct EmbeddedAsset {
  std::string_view name;
  std::string_view content;
};

std::vector<EmbeddedAsset> PromptAssets();
std::vector<EmbeddedAsset> SchemaAssets();

// Throws ConfigError for unknown names.
std::string_view PromptAsset(std::string_view name);

inline constexpr std::string_view kCurationPromptAsset = "curation_prompt.txt";
inline constexpr std::string_view kArtifactPriorAsset = "artifact_prior.txt";

}  // namespace forgeline

#endif  // FORGELINE_ASSETS_H_
