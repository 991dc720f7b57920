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

#include "forgeline/fixtures.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "forgeline/error.h"
#include "forgeline/image.h"
#include "forgeline/manifest.h"
#include "forgeline/raster.h"
#include "forgeline/rng.h"

namespace forgeline {

namespace {

constexpr const char* kLocations[] = {"the left hand", "the background wall",
                                      "the animal's ears", "the shadow on the floor",
                                      "the window frame", "the face"};
constexpr const char* kExplanations[] = {
    "fingers are deformed and merge together",
    "straight lines bend without reason",
    "the ears have an implausible shape",
    "the shadow points against the light source",
    "the frame dissolves into the wall",
    "facial features are asymmetric and smeared"};

// Slightly jittered rectangle inside [x0, x1) x [y0, y1); stays convex.
Polygon RandomQuad(SplitMix64& rng, int x0, int x1, int y0, int y1) {
  const int w = x1 - x0, h = y1 - y0;
  const double left = x0 + 1 + rng.Below(std::max(1, w / 4));
  const double right = x1 - 1 - static_cast<double>(rng.Below(std::max(1, w / 4)));
  const double top = y0 + 1 + rng.Below(std::max(1, h / 4));
  const double bottom = y1 - 1 - static_cast<double>(rng.Below(std::max(1, h / 4)));
  auto jitter = [&] { return rng.Uniform() * 0.8; };
  return {{{left + jitter(), top + jitter()},
           {right - jitter(), top + jitter()},
           {right - jitter(), bottom - jitter()},
           {left + jitter(), bottom - jitter()}}};
}

}  // namespace

DatasetManifest MakeFixtureSet(const std::string& dir,
                               const FixtureSetOptions& options) {
  if (options.count < 0 || options.width < 24 || options.height < 16)
    throw ConfigError("fixture images must be at least 24x16");
  std::filesystem::create_directories(dir);
  DatasetManifest manifest;
  manifest.split = Split::kTest;
  manifest.base_dir = dir;
  const int w = options.width, h = options.height;
  for (int i = 0; i < options.count; ++i) {
    SplitMix64 rng(CounterHash(options.seed, 0x66697874ULL, i));
    char id[16];
    std::snprintf(id, sizeof id, "fx%02d", i);

    RgbImage reference(w, h);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        for (int ch = 0; ch < 3; ++ch)
          reference.at(r, c)[ch] = static_cast<uint8_t>(
              (r * (3 + ch) + c * (5 - ch) + i * 17 + rng.Below(24)) % 256);

    AnnotatedImage entry;
    entry.id = id;
    entry.label = ImageLabel::kFake;
    entry.content_type = kAllContentTypes[i % 4];
    entry.generator = "fixture-gen";
    entry.width = w;
    entry.height = h;
    const int regions = 2 + i % 2;
    for (int k = 0; k < regions; ++k) {
      const int x0 = k * w / regions, x1 = (k + 1) * w / regions;
      ArtifactRegion region;
      region.location = kLocations[(i + k) % 6];
      region.explanation = kExplanations[(i * 2 + k) % 6];
      region.artifact_type = kAllArtifactTypes[(i + k) % 3];
      region.polygons.push_back(RandomQuad(rng, x0, x1, 2, h - 2));
      entry.regions.push_back(std::move(region));
    }

    RgbImage synthetic = reference;
    const BinaryMask truth = GroundTruthMask(entry);
    for (size_t p = 0; p < truth.size(); ++p)
      if (truth[p]) synthetic.pixels[p * 3] ^= 0x80;

    entry.image_ref = std::string(id) + ".png";
    entry.reference_ref = std::string(id) + "_ref.png";
    WritePng(dir + "/" + entry.image_ref, synthetic);
    WritePng(dir + "/" + *entry.reference_ref, reference);
    manifest.entries.push_back(std::move(entry));
  }
  WriteManifest(dir + "/manifest.jsonl", manifest);
  return manifest;
}

}  // namespace forgeline
