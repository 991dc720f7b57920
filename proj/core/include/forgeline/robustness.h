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

#ifndef FORGELINE_ROBUSTNESS_H_
#define FORGELINE_ROBUSTNESS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"
#include "forgeline/backends.h"
#include "forgeline/perturb.h"
#include "forgeline/segmentation.h"

namespace forgeline {

struct RobustnessRow {
  PerturbSpec spec;
  bool failed = false;
  std::string error;
  SegScore score;  // ratios
  // (clean - perturbed) / clean, as fractions. Absent when failed or when
  // the clean value is 0.
  std::optional<double> miou_degradation;
  std::optional<double> f1_degradation;
};

struct RobustnessReport {
  Aggregation aggregation = Aggregation::kMacro;
  std::vector<RobustnessRow> rows;  // one per grid entry, in grid order
  // The unperturbed scores used for degradation. Equal to the "none" row
  // when the grid contains one.
  std::optional<SegScore> clean;

  nlohmann::json ToJson() const;
  // Fixed-width table: Perturbation | mIoU | F1, with degradation
  // percentages in parentheses.
  std::string ToTable() const;
};

struct RobustnessOptions {
  Aggregation aggregation = Aggregation::kMacro;
  size_t max_parallel = 4;
  uint64_t seed = 0;
};

// Perturbs every image of the (valid) manifest under each grid entry, runs
// the analyzer and scores the union of reported masks against ground truth.
// A backend failure marks that row failed and the run continues. Noise
// streams are keyed per image by (spec.seed, image id).
RobustnessReport RunRobustness(const DatasetManifest& manifest,
                               Analyzer& analyzer,
                               std::span<const PerturbSpec> grid,
                               const RobustnessOptions& options = {});

}  // namespace forgeline

#endif  // FORGELINE_ROBUSTNESS_H_
