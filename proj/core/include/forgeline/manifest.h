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

#ifndef FORGELINE_MANIFEST_H_
#define FORGELINE_MANIFEST_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"

namespace forgeline {

// One violated invariant. `entry_id` is empty for manifest-level problems;
// `line` is the 1-based JSONL line (0 when not file-backed).
struct Violation {
  std::string entry_id;
  std::string field_path;
  std::string message;
  size_t line = 0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Non-fatal notes, e.g. vertices clamped into the image.
  std::vector<Violation> warnings;

  bool ok() const { return violations.empty(); }
  bool Has(std::string_view message) const;
  nlohmann::json ToJson() const;
};

// Result of a lenient load: entries that parse are kept, everything that
// does not becomes a violation. An entry with a bad region keeps its other
// regions.
struct ManifestLoad {
  DatasetManifest manifest;
  std::vector<Violation> parse_violations;
  size_t line_count = 0;  // non-blank lines
};

// JSON form of one entry (the JSONL line schema).
nlohmann::json EntryToJson(const AnnotatedImage& entry);
std::string ManifestToJsonl(const DatasetManifest& manifest);
void WriteManifest(const std::string& path, const DatasetManifest& manifest);

ManifestLoad ParseManifestJsonl(const std::string& text,
                                const std::string& base_dir = ".");
// Throws IoError when the file cannot be read.
ManifestLoad LoadManifest(const std::string& path,
                          Split split = Split::kUnsplit);

// Strict load for pipelines: throws ValidationError listing violations.
DatasetManifest LoadValidManifest(const std::string& path,
                                  Split split = Split::kUnsplit);

struct ValidateOptions {
  std::optional<size_t> expected_count;
  // Clamp out-of-bounds vertices in place (reported as warnings).
  bool clamp = true;
};

// Checks every invariant of the schema. Unknown dimensions are resolved from
// the image's PNG header when the ref is readable.
ValidationReport ValidateManifest(DatasetManifest& manifest,
                                  const ValidateOptions& options = {});
ValidationReport ValidateManifestFile(const std::string& path,
                                      const ValidateOptions& options = {});

struct DatasetStats {
  std::array<size_t, 4> images_by_content{};   // indexed by ContentType
  std::array<size_t, 3> regions_by_artifact{};  // indexed by ArtifactType
  size_t real_images = 0;
  size_t fake_images = 0;
  size_t total_images = 0;
  size_t total_regions = 0;
  size_t total_polygons = 0;

  DatasetStats& operator+=(const DatasetStats& other);
  bool operator==(const DatasetStats&) const = default;
  nlohmann::json ToJson() const;
};

DatasetStats ComputeDatasetStats(const DatasetManifest& manifest);

}  // namespace forgeline

#endif  // FORGELINE_MANIFEST_H_
