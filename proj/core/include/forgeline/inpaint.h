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

#ifndef FORGELINE_INPAINT_H_
#define FORGELINE_INPAINT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"
#include "forgeline/backend_suite.h"
#include "forgeline/backends.h"
#include "forgeline/image.h"
#include "forgeline/run_status.h"

namespace forgeline {

// Patch pixels where the mask is set, base pixels elsewhere. Throws
// DimensionError on any shape mismatch.
RgbImage CompositeRegion(const RgbImage& base, const RgbImage& patch,
                         const BinaryMask& mask);
void CompositeInto(RgbImage& base, const RgbImage& patch,
                   const BinaryMask& mask);

struct RegionTriplet {
  std::string location;
  BinaryMask mask;
  std::string explanation;
};

// Triplets in report order. Throws DimensionError if a mask does not match
// the image size.
std::vector<RegionTriplet> TripletsFromReport(const AnalyzerReport& report,
                                              int width, int height);

enum class InpaintMode {
  // Every region is inpainted against the same I_t and the results are
  // composited in list order, so later regions win on overlaps.
  kPaperFaithful,
  // Each result is folded into the working image before the next region.
  kSequential,
};

std::string_view ToString(InpaintMode mode);  // "paper_faithful"
std::optional<InpaintMode> ParseInpaintMode(std::string_view text);

struct InpaintConfig {
  int max_iters = 3;
  InpaintMode mode = InpaintMode::kPaperFaithful;
  bool early_stop = true;
  uint64_t seed = 0;
  std::string subject;
  // Concurrent inpaint calls within one paper_faithful iteration.
  size_t max_parallel = 4;
  // Keep each region's raw inpainter output in the log.
  bool keep_region_images = false;
  // Optional artifact counter recorded per iteration (tests and the CLI's
  // mock runs plug in the fixture oracle).
  std::function<uint64_t(const RgbImage&)> residual_probe;
};

struct InpaintIteration {
  int t = 0;
  std::vector<RegionTriplet> triplets;
  RgbImage input;   // I_t
  RgbImage output;  // I_{t+1}
  std::vector<RgbImage> region_images;
  uint64_t changed_pixels = 0;
  uint64_t union_area = 0;
  bool outside_preserved = true;
  std::optional<double> score;  // of the output
  std::optional<uint64_t> residual_artifacts;  // of the output
};

struct InpaintRunLog {
  InpaintConfig config;
  nlohmann::json backends = nlohmann::json::object();
  RunStatus status = RunStatus::kCompleted;
  std::string error;
  std::string error_kind;
  RgbImage initial;
  std::optional<double> initial_score;
  std::optional<uint64_t> initial_residual;
  std::vector<InpaintIteration> iterations;

  const RgbImage& final_image() const {
    return iterations.empty() ? initial : iterations.back().output;
  }
  std::optional<double> post_score() const;

  nlohmann::json ToJson() const;
};

std::string InpaintImageName(int t);                  // "iter_01.png" = I_1
std::string InpaintRegionImageName(int t, size_t i);  // "iter_00_region_02.png"

// Runs the region-wise inpainting loop. Requires analyzer and inpainter;
// the scorer is used when present. Backend failures abort with the partial
// log; an inpainter answer of the wrong size is a ProtocolError.
InpaintRunLog RunInpainting(const RgbImage& image, const BackendSuite& suite,
                            const InpaintConfig& config);

void PersistInpaintLog(const InpaintRunLog& log, const std::string& run_dir);

}  // namespace forgeline

#endif  // FORGELINE_INPAINT_H_
