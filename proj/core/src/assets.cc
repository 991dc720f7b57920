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

#include "forgeline/assets.h"

#include "forgeline/error.h"

namespace forgeline {

// Defined in the CMake-generated embedded_assets.cc.
namespace internal {
extern const EmbeddedAsset kPromptAssets[];
extern const size_t kPromptAssetCount;
extern const EmbeddedAsset kSchemaAssets[];
extern const size_t kSchemaAssetCount;
}  // namespace internal

std::vector<EmbeddedAsset> PromptAssets() {
  return {internal::kPromptAssets,
          internal::kPromptAssets + internal::kPromptAssetCount};
}

std::vector<EmbeddedAsset> SchemaAssets() {
  return {internal::kSchemaAssets,
          internal::kSchemaAssets + internal::kSchemaAssetCount};
}

std::string_view PromptAsset(std::string_view name) {
  for (const auto& asset : PromptAssets())
    if (asset.name == name) return asset.content;
  throw ConfigError("unknown prompt asset " + std::string(name));
}

}  // namespace forgeline
