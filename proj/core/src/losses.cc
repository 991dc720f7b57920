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

#include "forgeline/losses.h"

#include <algorithm>
#include <cmath>

#include "forgeline/error.h"

namespace forgeline {

namespace {

void CheckRaster(const ProbabilityRaster& probs, const BinaryMask& gt) {
  if (probs.width != gt.width() || probs.height != gt.height() ||
      probs.values.size() != gt.size()) {
    throw DimensionError("probability raster does not match mask shape");
  }
  for (double p : probs.values) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("pixel probability outside [0,1]");
  }
}

double ClampedLog(double p) {
  return std::log(std::max(p, kLogEpsilon));
}

void CheckDistributions(std::span<const std::vector<double>> dists,
                        std::span<const int> tokens) {
  if (dists.size() != tokens.size())
    throw DimensionError("token distribution count != token count");
  for (size_t t = 0; t < dists.size(); ++t) {
    double sum = 0;
    for (double p : dists[t]) {
      if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("token probability outside [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kDistributionTolerance)
      throw ValidationError("token distribution " + std::to_string(t) +
                            " does not sum to 1");
    if (tokens[t] < 0 || static_cast<size_t>(tokens[t]) >= dists[t].size())
      throw ValidationError("token index out of vocabulary");
  }
}

}  // namespace

double BinaryCrossEntropy(const ProbabilityRaster& probs,
                          const BinaryMask& gt) {
  CheckRaster(probs, gt);
  double sum = 0;
  for (size_t i = 0; i < gt.size(); ++i) {
    const double p = probs.values[i];
    sum -= gt[i] ? ClampedLog(p) : ClampedLog(1.0 - p);
  }
  return sum / static_cast<double>(gt.size());
}

double SoftDiceLoss(const ProbabilityRaster& probs, const BinaryMask& gt) {
  CheckRaster(probs, gt);
  double inter = 0;
  double sum_p = 0;
  double sum_g = 0;
  for (size_t i = 0; i < gt.size(); ++i) {
    const double g = gt[i] ? 1.0 : 0.0;
    inter += probs.values[i] * g;
    sum_p += probs.values[i];
    sum_g += g;
  }
  return 1.0 - (2.0 * inter + kDiceSmoothing) /
                   (sum_p + sum_g + kDiceSmoothing);
}

double TokenCrossEntropy(std::span<const std::vector<double>> token_dists,
                         std::span<const int> gt_tokens) {
  CheckDistributions(token_dists, gt_tokens);
  if (gt_tokens.empty()) return 0.0;
  double sum = 0;
  for (size_t t = 0; t < gt_tokens.size(); ++t)
    sum -= ClampedLog(token_dists[t][static_cast<size_t>(gt_tokens[t])]);
  return sum / static_cast<double>(gt_tokens.size());
}

LossBreakdown Stage1Loss(const ProbabilityRaster& probs, const BinaryMask& gt,
                         std::span<const std::vector<double>> token_dists,
                         std::span<const int> gt_tokens,
                         const LossWeights& weights) {
  if (weights.bce < 0 || weights.dice < 0 || weights.ce < 0)
    throw ValidationError("loss weights must be non-negative");
  LossBreakdown out;
  out.bce = BinaryCrossEntropy(probs, gt);
  out.dice = SoftDiceLoss(probs, gt);
  out.ce = TokenCrossEntropy(token_dists, gt_tokens);
  if (gt_tokens.empty() && weights.ce > 0)
    out.warnings.push_back("empty token list: CE term defined as 0");
  out.total = weights.bce * out.bce + weights.dice * out.dice +
              weights.ce * out.ce;
  return out;
}

Stage2Loss DetectionLoss(double p_real, double p_fake, ImageLabel gt) {
  if (!(p_real >= 0 && p_real <= 1 && p_fake >= 0 && p_fake <= 1))
    throw ValidationError("class probability outside [0,1]");
  if (std::abs(p_real + p_fake - 1.0) > kDistributionTolerance)
    throw ValidationError("class distribution does not sum to 1");
  Stage2Loss out;
  double p = gt == ImageLabel::kReal ? p_real : p_fake;
  if (p < kLogEpsilon) {
    out.warnings.push_back("p(gt) clamped to 1e-12");
    p = kLogEpsilon;
  }
  out.value = -std::log(p);
  return out;
}

}  // namespace forgeline
