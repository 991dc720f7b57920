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

#include <cmath>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "forgeline/perturb.h"
#include "forgeline/raster.h"
#include "forgeline/rle.h"
#include "forgeline/rng.h"
#include "forgeline/segmentation.h"
#include "forgeline/text_metrics.h"

namespace forgeline {
namespace {

BinaryMask NoiseMask(int w, int h, uint64_t seed) {
  SplitMix64 rng(seed);
  BinaryMask m(w, h);
  for (size_t i = 0; i < m.size(); ++i) m.set_flat(i, rng.Uniform() < 0.3);
  return m;
}

// Blocky masks are what annotations look like; noise is the RLE worst case.
BinaryMask BlockMask(int w, int h) {
  BinaryMask m(w, h);
  for (int r = h / 4; r < 3 * h / 4; ++r)
    for (int c = w / 3; c < 2 * w / 3; ++c) m.set(r, c, true);
  return m;
}

RgbImage NoiseImage(int w, int h) {
  SplitMix64 rng(5);
  RgbImage img(w, h);
  for (auto& p : img.pixels) p = static_cast<uint8_t>(rng.Next());
  return img;
}

void BM_RasterizePolygon(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Polygon poly;
  for (int k = 0; k < 64; ++k) {
    const double a = 2 * M_PI * k / 64, rad = n * (0.3 + 0.1 * (k % 2));
    poly.vertices.push_back({n / 2.0 + rad * std::cos(a), n / 2.0 + rad * std::sin(a)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(RasterizePolygon(poly, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_RasterizePolygon)->Arg(256)->Arg(1024);

void BM_RleEncodeBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryMask m = BlockMask(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(RleEncode(m));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_RleEncodeBlock)->Arg(256)->Arg(1024);

void BM_RleRoundtripNoise(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryMask m = NoiseMask(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(RleDecode(RleEncode(m), n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_RleRoundtripNoise)->Arg(256)->Arg(1024);

void BM_SegmentationScores(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryMask p = NoiseMask(n, n, 2), g = NoiseMask(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(SegmentationScores(p, g));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SegmentationScores)->Arg(32)->Arg(512)->Arg(1024);

void BM_RougeL(benchmark::State& state) {
  const int words = static_cast<int>(state.range(0));
  SplitMix64 rng(4);
  const char* vocab[] = {"hand", "six", "fingers", "blurred", "the", "shadow", "wrong", "text"};
  std::string a, b;
  for (int i = 0; i < words; ++i) {
    a += std::string(vocab[rng.Next() % 8]) + " ";
    b += std::string(vocab[rng.Next() % 8]) + " ";
  }
  for (auto _ : state) benchmark::DoNotOptimize(RougeLScore(a, b));
}
BENCHMARK(BM_RougeL)->Arg(30)->Arg(300);

void BM_GaussianBlur(benchmark::State& state) {
  const RgbImage img = NoiseImage(512, 512);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(GaussianBlur(img, k));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_GaussianBlur)->Arg(5)->Arg(15);

void BM_JpegCompress(benchmark::State& state) {
  const RgbImage img = NoiseImage(512, 512);
  for (auto _ : state) benchmark::DoNotOptimize(JpegCompress(img, static_cast<int>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_JpegCompress)->Arg(50)->Arg(20);

void BM_GaussianNoise(benchmark::State& state) {
  const RgbImage img = NoiseImage(512, 512);
  for (auto _ : state) benchmark::DoNotOptimize(GaussianNoise(img, 0.2, 7));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_GaussianNoise);

}  // namespace
}  // namespace forgeline

BENCHMARK_MAIN();
