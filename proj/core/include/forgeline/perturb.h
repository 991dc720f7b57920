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

#ifndef FORGELINE_PERTURB_H_
#define FORGELINE_PERTURB_H_

#include <cstdint>
#include <string>
#include <vector>

#include "forgeline/image.h"

namespace forgeline {

enum class PerturbKind { kNone, kJpeg, kNoise, kBlur };

struct PerturbSpec {
  PerturbKind kind = PerturbKind::kNone;
  int qf = 0;          // jpeg, 1..100
  double sigma = 0;    // noise, on the [0,1] pixel scale
  int ksize = 0;       // blur, odd >= 3
  uint64_t seed = 0;   // noise

  // "none", "jpeg:<qf>", "noise:<sigma>" or "blur:<ksize>". Throws
  // ConfigError on malformed text or out-of-range parameters.
  static PerturbSpec Parse(const std::string& text);

  // The spec string this was parsed from, e.g. "noise:0.1".
  std::string ToString() const;
  // Table label, e.g. "Gaussian Noise (σ = 0.1)".
  std::string Label() const;

 private:
  std::string text_;
};

// Baseline JPEG encode at quality `qf` with the standard IJG table scaling,
// then decode. Throws ConfigError for qf outside [1,100].
RgbImage JpegCompress(const RgbImage& image, int qf);

// Standard normal variate number `index` of stream `seed`. Pairs of
// variates come from one Box-Muller transform over two SplitMix64 counter
// hashes, so any pixel's noise can be recomputed independently.
double NoiseDraw(uint64_t seed, uint64_t index);

// Adds sigma * NoiseDraw(seed, i) to sample i (row-major, channel-minor) on
// the [0,1] scale, clamps, and rounds back to 8 bits.
RgbImage GaussianNoise(const RgbImage& image, double sigma, uint64_t seed);

// sigma = 0.3 * ((ksize - 1) * 0.5 - 1) + 0.8
double BlurSigma(int ksize);
// Normalized 1-D kernel of length ksize.
std::vector<double> GaussianKernel(int ksize);
// Separable blur with replicated borders. Throws ConfigError for even or
// too small ksize.
RgbImage GaussianBlur(const RgbImage& image, int ksize);

RgbImage ApplyPerturbation(const RgbImage& image, const PerturbSpec& spec);

// "none" followed by QF {50,35,20}, sigma {0.1,0.2,0.3}, ksize {5,9,15}.
std::vector<PerturbSpec> DefaultRobustnessGrid(uint64_t seed = 0);

}  // namespace forgeline

#endif  // FORGELINE_PERTURB_H_
