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

#ifndef FORGELINE_LOSSES_H_
#define FORGELINE_LOSSES_H_

#include <span>
#include <string>
#include <vector>

#include "forgeline/annotation.h"

namespace forgeline {

// Weights of the stage-1 objective. Defaults are the reference training
// configuration: ce 1.0, dice 0.2, bce 0.4.
struct LossWeights {
  double bce = 0.4;
  double dice = 0.2;
  double ce = 1.0;
};

// Soft-Dice smoothing added to numerator and denominator.
inline constexpr double kDiceSmoothing = 1e-6;
// Probabilities are floored at eps before taking logs.
inline constexpr double kLogEpsilon = 1e-12;
// Tolerance on a token distribution summing to one.
inline constexpr double kDistributionTolerance = 1e-6;

// Per-pixel probabilities, row-major, same shape as the ground-truth mask.
struct ProbabilityRaster {
  int width = 0;
  int height = 0;
  std::vector<double> values;
};

struct LossBreakdown {
  double bce = 0;
  double dice = 0;
  double ce = 0;
  double total = 0;
  std::vector<std::string> warnings;
};

// Mean binary cross-entropy over pixels.
double BinaryCrossEntropy(const ProbabilityRaster& probs, const BinaryMask& gt);
// 1 - (2 sum(p*g) + s) / (sum(p) + sum(g) + s).
double SoftDiceLoss(const ProbabilityRaster& probs, const BinaryMask& gt);
// Mean -log p(gt token). Empty input returns 0.
double TokenCrossEntropy(std::span<const std::vector<double>> token_dists,
                         std::span<const int> gt_tokens);

// Throws ValidationError for probabilities outside [0,1], distributions not
// summing to one, token index out of range; DimensionError for shape
// mismatch. An empty token list yields CE = 0 plus a warning.
LossBreakdown Stage1Loss(const ProbabilityRaster& probs, const BinaryMask& gt,
                         std::span<const std::vector<double>> token_dists,
                         std::span<const int> gt_tokens,
                         const LossWeights& weights = {});

struct Stage2Loss {
  double value = 0;
  std::vector<std::string> warnings;  // set when p(gt) was clamped
};

// -ln p(gt) over the {real, fake} pair.
Stage2Loss DetectionLoss(double p_real, double p_fake, ImageLabel gt);

}  // namespace forgeline

#endif  // FORGELINE_LOSSES_H_
