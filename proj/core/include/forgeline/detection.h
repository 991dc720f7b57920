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

#ifndef FORGELINE_DETECTION_H_
#define FORGELINE_DETECTION_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"
#include "forgeline/backends.h"

namespace forgeline {

struct DetectionRecord {
  std::string id;
  double fake_prob = 0;
  ImageLabel gt = ImageLabel::kReal;
  std::string group;
};

struct GroupAccuracy {
  size_t n = 0;
  size_t correct = 0;
  double accuracy() const { return n ? 100.0 * correct / n : 0.0; }
};

struct DetectionResult {
  double threshold = kFakeThreshold;
  GroupAccuracy overall;
  std::map<std::string, GroupAccuracy> groups;
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
};

// A record is predicted fake iff fake_prob >= threshold. Records with an
// empty group count toward the overall figure only and raise a warning.
// Throws ValidationError for an empty input or a probability outside [0,1].
DetectionResult DetectionAccuracy(std::span<const DetectionRecord> records,
                                  double threshold = kFakeThreshold);

struct GrowthReport {
  size_t n = 0;
  double pre_mean = 0;
  double post_mean = 0;
  double growth_ratio_of_means = 0;  // percent
  // Percent; absent when every pre score is zero.
  std::optional<double> growth_per_sample_mean;
  size_t per_sample_n = 0;
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
};

// Both aggregations of the relative score change. Samples with a zero pre
// score are excluded from the per-sample mean with a warning. Throws
// ValidationError for empty or misaligned inputs or a zero pre mean.
GrowthReport GrowthRate(std::span<const double> pre, std::span<const double> post);

}  // namespace forgeline

#endif  // FORGELINE_DETECTION_H_
