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

#include "forgeline/regen.h"

#include <stdexcept>

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

size_t CountAvoid(const std::string& prompt) {
  size_t n = 0;
  for (size_t p = prompt.find("Avoid:"); p != std::string::npos; p = prompt.find("Avoid:", p + 1))
    ++n;
  return n;
}

class RegenTest : public ::testing::Test {
 protected:
  void SetUp() override {
    manifest_ = LoadValidManifest(Fixture("clean10/manifest.jsonl"));
    suite_ = BuildMockSuite(manifest_, {});
  }
  RgbImage Image(const AnnotatedImage& e) { return LoadImageRef(e.image_ref, manifest_.base_dir); }
  RegenConfig Config(const std::string& id) {
    RegenConfig c;
    c.subject = id;
    c.initial_prompt = "a photo of " + id;
    return c;
  }

  DatasetManifest manifest_;
  BackendSuite suite_;
};

TEST(MemoryBankTest, AppendOrder) {
  MemoryBank m;
  m.Append(0, "a");
  m.Append(0, "b");
  m.Append(2, "c");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(m.entries()[2], (MemoryEntry{2, "c"}));
  EXPECT_THROW(m.Append(1, "d"), std::invalid_argument);
}

TEST_F(RegenTest, DefaultBudgetIsTwo) { EXPECT_EQ(RegenConfig{}.max_iters, 2); }

TEST_F(RegenTest, MemoryEqualsRegionsReportedSoFar) {
  for (const auto& e : manifest_.entries) {
    RegenConfig cfg = Config(e.id);
    cfg.early_stop = false;
    const RegenRunLog log = RunRegeneration(Image(e), suite_, cfg);
    ASSERT_EQ(log.status, RunStatus::kCompleted) << log.error;
    size_t reported = 0;
    for (const auto& it : log.iterations) {
      // Length before this iteration's append equals regions of 0..t-1.
      if (it.report) reported += it.report->regions.size();
      EXPECT_EQ(it.memory_size, reported) << e.id << " t=" << it.t;
    }
    EXPECT_EQ(log.memory.size(), reported);
  }
}

TEST_F(RegenTest, PromptsChainThroughReviser) {
  const auto& e = manifest_.entries[0];
  const RegenRunLog log = RunRegeneration(Image(e), suite_, Config(e.id));
  ASSERT_EQ(log.iterations.size(), 3u);
  EchoReviser reviser;
  MemoryBank replay;
  for (int t = 0; t < 2; ++t) {
    for (const auto& r : log.iterations[t].report->regions) replay.Append(t, r.explanation);
    EXPECT_EQ(log.iterations[t + 1].prompt, reviser.Revise(log.iterations[t].prompt, replay.entries()));
    EXPECT_EQ(CountAvoid(log.iterations[t + 1].prompt), static_cast<size_t>(t + 1));
  }
  EXPECT_EQ(log.iterations[0].prompt, "a photo of " + e.id);
  EXPECT_FALSE(log.iterations.back().report.has_value());
}

TEST_F(RegenTest, CaptionerSuppliesInitialPrompt) {
  const auto& e = manifest_.entries[1];
  RegenConfig cfg = Config(e.id);
  cfg.initial_prompt.reset();
  const RegenRunLog log = RunRegeneration(Image(e), suite_, cfg);
  EXPECT_EQ(log.iterations[0].prompt, "a photo");
}

TEST_F(RegenTest, IdenticalSeedsGiveIdenticalLogs) {
  const auto& e = manifest_.entries[2];
  RegenConfig cfg = Config(e.id);
  cfg.seed = 99;
  const auto a = RunRegeneration(Image(e), suite_, cfg).ToJson().dump();
  const auto b = RunRegeneration(Image(e), BuildMockSuite(manifest_, {}), cfg).ToJson().dump();
  EXPECT_EQ(a, b);
}

TEST_F(RegenTest, EarlyStopOnCleanImage) {
  const auto& e = manifest_.entries[3];
  const RgbImage clean = LoadImageRef(*e.reference_ref, manifest_.base_dir);
  const RegenRunLog log = RunRegeneration(clean, suite_, Config(e.id));
  EXPECT_EQ(log.status, RunStatus::kEarlyStop);
  EXPECT_EQ(log.iterations.size(), 1u);
  EXPECT_TRUE(log.memory.empty());
}

TEST_F(RegenTest, ScoresImproveWithAreaScorer) {
  for (const auto& e : manifest_.entries) {
    const RegenRunLog log = RunRegeneration(Image(e), suite_, Config(e.id));
    ASSERT_TRUE(log.pre_score() && log.post_score());
    EXPECT_GE(*log.post_score(), *log.pre_score());
  }
}

TEST_F(RegenTest, LogValidatesAgainstSchema) {
  const auto& e = manifest_.entries[4];
  const auto j = RunRegeneration(Image(e), suite_, Config(e.id)).ToJson();
  const auto errors = ValidateJson(ShippedSchema("regen_run_log"), j);
  EXPECT_TRUE(errors.empty()) << errors.front();
}

class WrongSizeGenerator : public Generator {
 public:
  RgbImage Generate(const std::string&, int, int, const CallContext&) override {
    return RgbImage(1, 1);
  }
};

TEST_F(RegenTest, WrongShapeFromGeneratorAborts) {
  const auto& e = manifest_.entries[5];
  BackendSuite s = suite_;
  s.generator = std::make_shared<WrongSizeGenerator>();
  s.descriptors[Role::kGenerator] = "test:wrong-size";
  const RegenRunLog log = RunRegeneration(Image(e), s, Config(e.id));
  EXPECT_EQ(log.status, RunStatus::kAborted);
  EXPECT_EQ(log.error_kind, "protocol");
  EXPECT_EQ(log.ToJson()["status"], "aborted");
}

TEST_F(RegenTest, MissingRolesAreConfigError) {
  BackendSuite s = suite_;
  s.reviser.reset();
  EXPECT_THROW(RunRegeneration(Image(manifest_.entries[0]), s, Config("fx00")), ConfigError);
}

TEST_F(RegenTest, PersistWritesImagesAndLog) {
  testing::TempDir dir("regen");
  const auto& e = manifest_.entries[0];
  const RegenRunLog log = RunRegeneration(Image(e), suite_, Config(e.id));
  PersistRegenLog(log, dir.path());
  for (const auto& it : log.iterations)
    EXPECT_EQ(DecodePng(ReadFileBytes(dir / RegenImageName(it.t))), it.image);
  EXPECT_TRUE(std::filesystem::exists(dir / "run_log.json"));
}

}  // namespace
}  // namespace forgeline
