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

#ifndef FORGELINE_CURATION_H_
#define FORGELINE_CURATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"
#include "forgeline/backends.h"

namespace forgeline {

struct KMeansResult {
  std::vector<int> assignments;                 // one per point
  std::vector<std::vector<double>> centroids;   // k rows
  // Sum of squared distances after each assignment step.
  std::vector<double> objective;
  int iterations = 0;
  bool converged = false;
};

// Lloyd's algorithm from a k-means++ start drawn with SplitMix64(seed).
// Ties go to the lowest centroid index; an empty cluster keeps its previous
// centroid. Throws ConfigError when k < 1, k > points, or dims differ.
KMeansResult KMeans(const std::vector<std::vector<double>>& points, int k,
                    uint64_t seed, int max_iters = 100);

// Uniform draw without replacement of up to n members per cluster (partial
// Fisher-Yates per cluster, clusters visited in ascending label order).
// Returns point indices in ascending order.
std::vector<size_t> StratifiedSample(std::span<const int> assignments,
                                     int n_per_cluster, uint64_t seed);

enum class JudgeLabel {
  kAcceptable,
  kRejectedClarity,
  kRejectedSafety,
  kRejectedRealism,
};

// Exact match on "Acceptable", "Rejected[Clarity]", "Rejected[Safety]" or
// "Rejected[Realism]" after trimming surrounding whitespace.
std::optional<JudgeLabel> ParseJudgeLabel(std::string_view text);
std::string_view ToString(JudgeLabel label);

struct JudgeOutcome {
  std::string id;
  std::string raw_response;
  std::optional<JudgeLabel> label;  // absent: unparseable, not kept
  std::string diagnostic;
};

struct JudgeFilterResult {
  std::vector<JudgeOutcome> outcomes;  // manifest order
  std::vector<std::string> kept;       // ids labeled Acceptable

  size_t failed() const;
  nlohmann::json ToJson() const;
};

// Asks the judge about every manifest image with `prompt` (normally the
// packaged curation prompt). Backend failures propagate.
JudgeFilterResult JudgeFilter(const DatasetManifest& manifest, Judge& judge,
                              const std::string& prompt,
                              size_t max_parallel = 4, uint64_t seed = 0);

}  // namespace forgeline

#endif  // FORGELINE_CURATION_H_
