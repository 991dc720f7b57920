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

#include "forgeline/inpaint.h"

#include <gtest/gtest.h>

#include "forgeline/backend_suite.h"
#include "forgeline/error.h"
#include "forgeline/json_schema.h"
#include "forgeline/manifest.h"
#include "forgeline/mocks.h"
#include "test_util.h"

namespace forgeline {
namespace {

using testing::Fixture;

// Pointwise inpainter whose output depends on the input pixel, its position
// and the explanation.
class ScrambleInpainter : public Inpainter {
 public:
  RgbImage Inpaint(const RgbImage& image, const BinaryMask&, const std::string& explanation,
                   const CallContext& ctx) override {
    RgbImage out = image;
    const uint64_t key = Fnv1a64(explanation) ^ ctx.seed;
    for (size_t i = 0; i < out.pixels.size(); ++i)
      out.pixels[i] = static_cast<uint8_t>(out.pixels[i] ^ (CounterHash(key, i, 0) & 0xff));
    return out;
  }
};

// Reports fixed regions regardless of the image.
class FixedAnalyzer : public Analyzer {
 public:
  explicit FixedAnalyzer(std::vector<BinaryMask> masks) : masks_(std::move(masks)) {}
  AnalyzerReport Analyze(const RgbImage&, const CallContext&) override {
    AnalyzerReport r;
    r.label = ImageLabel::kFake;
    r.fake_prob = 1;
    for (size_t i = 0; i < masks_.size(); ++i)
      r.regions.push_back({"loc", masks_[i], ArtifactType::kStructure, "e" + std::to_string(i)});
    return r;
  }

 private:
  std::vector<BinaryMask> masks_;
};

class InpaintTest : public ::testing::Test {
 protected:
  void SetUp() override {
    manifest_ = LoadValidManifest(Fixture("clean10/manifest.jsonl"));
    store_ = std::make_shared<FixtureStore>(manifest_);
  }
  RgbImage Image(const AnnotatedImage& e) { return LoadImageRef(e.image_ref, manifest_.base_dir); }
  BackendSuite Suite(InpainterKind kind) {
    MockConfig mc;
    mc.inpainter_kind = kind;
    return BuildMockSuite(manifest_, mc);
  }
  InpaintConfig Config(const std::string& id, InpaintMode mode = InpaintMode::kPaperFaithful) {
    InpaintConfig c;
    c.subject = id;
    c.mode = mode;
    c.residual_probe = [this, id](const RgbImage& img) {
      return static_cast<uint64_t>(store_->ResidualArtifacts(id, img).Area());
    };
    return c;
  }

  DatasetManifest manifest_;
  std::shared_ptr<const FixtureStore> store_;
};

TEST(CompositeTest, TakesPatchInsideMaskOnly) {
  RgbImage base(3, 2, 10), patch(3, 2, 200);
  BinaryMask m(3, 2);
  m.set(1, 2, true);
  const RgbImage out = CompositeRegion(base, patch, m);
  EXPECT_EQ(out.at(1, 2)[0], 200);
  EXPECT_EQ(testing::PixelDiffCount(out, base), 1u);
  EXPECT_THROW(CompositeRegion(base, RgbImage(2, 2), m), DimensionError);
  EXPECT_THROW(CompositeRegion(base, patch, BinaryMask(2, 2)), DimensionError);
}

TEST(InpaintModeTest, Parse) {
  EXPECT_EQ(ParseInpaintMode("paper_faithful"), InpaintMode::kPaperFaithful);
  EXPECT_EQ(ParseInpaintMode("sequential"), InpaintMode::kSequential);
  EXPECT_FALSE(ParseInpaintMode("both"));
  EXPECT_EQ(ToString(InpaintMode::kSequential), "sequential");
}

TEST_F(InpaintTest, IdentityInpainterLeavesImageUnchanged) {
  const BackendSuite suite = Suite(InpainterKind::kIdentity);
  for (const auto& e : manifest_.entries) {
    const RgbImage img = Image(e);
    const InpaintRunLog log = RunInpainting(img, suite, Config(e.id));
    ASSERT_EQ(log.iterations.size(), 3u);
    for (const auto& it : log.iterations) EXPECT_EQ(it.output, img);
    EXPECT_EQ(log.final_image(), img);
  }
}

TEST_F(InpaintTest, OutsideMaskIsPreservedForEveryMockInpainter) {
  for (auto kind : {InpainterKind::kIdentity, InpainterKind::kPerfect, InpainterKind::kConstantFill}) {
    const BackendSuite suite = Suite(kind);
    for (const auto& e : manifest_.entries) {
      for (auto mode : {InpaintMode::kPaperFaithful, InpaintMode::kSequential}) {
        InpaintConfig cfg = Config(e.id, mode);
        cfg.early_stop = false;
        const InpaintRunLog log = RunInpainting(Image(e), suite, cfg);
        ASSERT_NE(log.status, RunStatus::kAborted) << log.error;
        for (const auto& it : log.iterations) {
          BinaryMask united(it.input.width, it.input.height);
          for (const auto& tr : it.triplets) united |= tr.mask;
          const BinaryMask changed = DiffMask(it.input, it.output);
          BinaryMask outside = changed;
          outside &= united.Complement();
          EXPECT_EQ(outside.Area(), 0u) << e.id;
          EXPECT_TRUE(it.outside_preserved);
          EXPECT_EQ(it.changed_pixels, changed.Area());
        }
      }
    }
  }
}

TEST_F(InpaintTest, ScrambleInpainterAlsoPreservesOutside) {
  BackendSuite suite = Suite(InpainterKind::kIdentity);
  suite.inpainter = std::make_shared<ScrambleInpainter>();
  const auto& e = manifest_.entries[0];
  InpaintConfig cfg = Config(e.id);
  cfg.early_stop = false;
  const InpaintRunLog log = RunInpainting(Image(e), suite, cfg);
  for (const auto& it : log.iterations) {
    EXPECT_TRUE(it.outside_preserved);
    EXPECT_LE(it.changed_pixels, it.union_area);
  }
}

TEST_F(InpaintTest, ModesAgreeOnDisjointMasks) {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 24, h = 18;
    // Disjoint masks: each pixel belongs to at most one region.
    const int k = 1 + rng.Below(4);
    std::vector<BinaryMask> masks(k, BinaryMask(w, h));
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        const int owner = rng.Below(k + 1);
        if (owner < k) masks[owner].set(r, c, true);
      }
    BackendSuite suite;
    suite.analyzer = std::make_shared<FixedAnalyzer>(masks);
    for (int variant = 0; variant < 2; ++variant) {
      if (variant == 0)
        suite.inpainter = std::make_shared<ScrambleInpainter>();
      else
        suite.inpainter = std::make_shared<ConstantFillInpainter>(std::array<uint8_t, 3>{1, 2, 3});
      const RgbImage img = testing::RandomImage(rng, w, h);
      InpaintConfig a;
      a.seed = trial;
      a.mode = InpaintMode::kPaperFaithful;
      InpaintConfig b = a;
      b.mode = InpaintMode::kSequential;
      const InpaintRunLog la = RunInpainting(img, suite, a);
      const InpaintRunLog lb = RunInpainting(img, suite, b);
      ASSERT_EQ(la.iterations.size(), lb.iterations.size());
      for (size_t t = 0; t < la.iterations.size(); ++t)
        ASSERT_EQ(la.iterations[t].output.pixels, lb.iterations[t].output.pixels);
    }
  }
}

TEST_F(InpaintTest, OverlapResolvesToLaterRegionInPaperFaithful) {
  BinaryMask a(4, 4), b(4, 4);
  a.set(1, 1, true);
  b.set(1, 1, true);
  BackendSuite suite;
  suite.analyzer = std::make_shared<FixedAnalyzer>(std::vector<BinaryMask>{a, b});
  suite.inpainter = std::make_shared<ScrambleInpainter>();
  const RgbImage img(4, 4, 50);
  InpaintConfig cfg;
  cfg.max_iters = 1;
  const InpaintRunLog log = RunInpainting(img, suite, cfg);
  ScrambleInpainter s;
  const RgbImage second = s.Inpaint(img, b, "e1", {});
  EXPECT_EQ(log.final_image().at(1, 1)[0], second.at(1, 1)[0]);
}

TEST_F(InpaintTest, OraclePlusPerfectConvergesWithinBudget) {
  const BackendSuite suite = Suite(InpainterKind::kPerfect);
  for (const auto& e : manifest_.entries) {
    for (auto mode : {InpaintMode::kPaperFaithful, InpaintMode::kSequential}) {
      const InpaintRunLog log = RunInpainting(Image(e), suite, Config(e.id, mode));
      ASSERT_TRUE(log.initial_residual.has_value());
      EXPECT_GT(*log.initial_residual, 0u);
      uint64_t prev = *log.initial_residual;
      for (const auto& it : log.iterations) {
        EXPECT_LE(*it.residual_artifacts, prev);
        prev = *it.residual_artifacts;
      }
      EXPECT_EQ(prev, 0u) << e.id;
      EXPECT_LE(log.iterations.size(), 3u);
    }
  }
}

TEST_F(InpaintTest, EarlyStopRecordsTheCleanIteration) {
  const BackendSuite suite = Suite(InpainterKind::kPerfect);
  const auto& e = manifest_.entries[0];
  const InpaintRunLog log = RunInpainting(Image(e), suite, Config(e.id));
  EXPECT_EQ(log.status, RunStatus::kEarlyStop);
  EXPECT_TRUE(log.iterations.back().triplets.empty());
}

TEST_F(InpaintTest, LogIsDeterministicAndSchemaValid) {
  const BackendSuite suite = Suite(InpainterKind::kPerfect);
  const auto& e = manifest_.entries[6];
  const auto a = RunInpainting(Image(e), suite, Config(e.id)).ToJson();
  const auto b = RunInpainting(Image(e), Suite(InpainterKind::kPerfect), Config(e.id)).ToJson();
  EXPECT_EQ(a.dump(), b.dump());
  const auto errors = ValidateJson(ShippedSchema("inpaint_run_log"), a);
  EXPECT_TRUE(errors.empty()) << errors.front();
}

TEST_F(InpaintTest, PersistWritesRegionImagesWhenAsked) {
  testing::TempDir dir("inpaint");
  const BackendSuite suite = Suite(InpainterKind::kPerfect);
  const auto& e = manifest_.entries[1];
  InpaintConfig cfg = Config(e.id);
  cfg.keep_region_images = true;
  const InpaintRunLog log = RunInpainting(Image(e), suite, cfg);
  PersistInpaintLog(log, dir.path());
  EXPECT_TRUE(std::filesystem::exists(dir / InpaintImageName(0)));
  EXPECT_TRUE(std::filesystem::exists(dir / InpaintRegionImageName(0, 0)));
  EXPECT_EQ(DecodePng(ReadFileBytes(dir / InpaintImageName(1))), log.iterations[0].output);
}

}  // namespace
}  // namespace forgeline
