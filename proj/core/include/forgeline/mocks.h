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

#ifndef FORGELINE_MOCKS_H_
#define FORGELINE_MOCKS_H_

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forgeline/annotation.h"
#include "forgeline/backends.h"
#include "forgeline/image.h"

namespace forgeline {

// Ground truth for one manifest entry, as seen by the mocks.
struct FixtureSubject {
  AnnotatedImage entry;
  std::vector<BinaryMask> region_masks;  // one per region, rasterized
  BinaryMask union_mask;
  std::optional<RgbImage> image;      // the (synthetic) image, when readable
  std::optional<RgbImage> reference;  // paired clean image
};

// Immutable lookup of fixtures by entry id, shared by all mocks of a suite.
class FixtureStore {
 public:
  // Rasterizes every entry; loads images and references that are readable.
  explicit FixtureStore(const DatasetManifest& manifest);

  // Throws ConfigError for unknown subjects.
  const FixtureSubject& Get(const std::string& subject) const;
  bool Contains(const std::string& subject) const;
  bool AllFakesHaveReferences() const;

  // Pixels of the ground-truth union that still carry an artifact: those
  // differing from the reference when one exists, else the whole union.
  BinaryMask ResidualArtifacts(const std::string& subject,
                               const RgbImage& image) const;

 private:
  std::map<std::string, FixtureSubject> subjects_;
};

enum class InpainterKind { kIdentity, kPerfect, kConstantFill };
enum class ScorerKind { kArea, kConstant };

std::optional<InpainterKind> ParseInpainterKind(std::string_view text);
std::optional<ScorerKind> ParseScorerKind(std::string_view text);
std::string_view ToString(InpainterKind kind);
std::string_view ToString(ScorerKind kind);

struct MockConfig {
  int perturb_radius = 0;   // oracle mask dilation
  double drop_prob = 0.0;   // per-region drop probability
  uint64_t seed = 0;
  InpainterKind inpainter_kind = InpainterKind::kPerfect;
  ScorerKind scorer_kind = ScorerKind::kArea;
  std::array<uint8_t, 3> fill_color = {127, 127, 127};
  std::string caption = "a photo";
  std::string judge_response = "Acceptable";
  double constant_score = 50.0;

  nlohmann::json ToJson() const;
  // Missing keys keep their defaults; bad values throw ConfigError.
  static MockConfig FromJson(const nlohmann::json& j);
};

// Reports ground-truth regions for the subject. With a reference image it
// reports, per region, only the pixels that still differ from the reference
// (regions left empty are omitted). Masks are dilated by `perturb_radius`;
// each region is dropped when Hash(seed, subject, index) < drop_prob.
class OracleAnalyzer : public Analyzer {
 public:
  OracleAnalyzer(std::shared_ptr<const FixtureStore> store, MockConfig config)
      : store_(std::move(store)), config_(std::move(config)) {}
  AnalyzerReport Analyze(const RgbImage& image, const CallContext& ctx) override;

 private:
  std::shared_ptr<const FixtureStore> store_;
  MockConfig config_;
};

// Regeneration stand-in: returns the subject's synthetic image with the
// first r ground-truth regions restored from the reference, where r is the
// number of "Avoid:" clauses in the prompt.
class ProgressiveGenerator : public Generator {
 public:
  explicit ProgressiveGenerator(std::shared_ptr<const FixtureStore> store)
      : store_(std::move(store)) {}
  RgbImage Generate(const std::string& prompt, int width, int height,
                    const CallContext& ctx) override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

class IdentityInpainter : public Inpainter {
 public:
  RgbImage Inpaint(const RgbImage& image, const BinaryMask& mask,
                   const std::string& explanation,
                   const CallContext& ctx) override;
};

// Fills masked pixels from the subject's clean reference.
class PerfectInpainter : public Inpainter {
 public:
  explicit PerfectInpainter(std::shared_ptr<const FixtureStore> store)
      : store_(std::move(store)) {}
  RgbImage Inpaint(const RgbImage& image, const BinaryMask& mask,
                   const std::string& explanation,
                   const CallContext& ctx) override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

class ConstantFillInpainter : public Inpainter {
 public:
  explicit ConstantFillInpainter(std::array<uint8_t, 3> color) : color_(color) {}
  RgbImage Inpaint(const RgbImage& image, const BinaryMask& mask,
                   const std::string& explanation,
                   const CallContext& ctx) override;

 private:
  std::array<uint8_t, 3> color_;
};

// prompt unchanged for empty memory, else
// prompt + " Avoid: " + explanations joined by "; " in insertion order.
class EchoReviser : public Reviser {
 public:
  std::string Revise(const std::string& prompt,
                     const std::vector<MemoryEntry>& memory) override;
};

class ConstantCaptioner : public Captioner {
 public:
  explicit ConstantCaptioner(std::string caption) : caption_(std::move(caption)) {}
  std::string Caption(const RgbImage&, const CallContext&) override {
    return caption_;
  }

 private:
  std::string caption_;
};

// 32-dim deterministic embedder.
//
// Text: each token t of Tokenize(text) adds sign(t) to component
// FNV1a64(t) mod 32, where sign is -1 when bit 32 of the hash is set. The
// sum is L2-normalized; a zero sum maps to the first basis vector.
//
// Image: mean R, G, B (scaled to [0,1]) of each image quadrant (12 values)
// followed by a 20-bin histogram of luma (0.299R + 0.587G + 0.114B) as
// fractions, L2-normalized.
class HashEmbedder : public Embedder {
 public:
  static constexpr int kDim = 32;
  std::vector<double> EmbedText(const std::string& text) override;
  std::vector<double> EmbedImage(const RgbImage& image) override;
  int dim() const override { return kDim; }
};

// score = 100 * (1 - residual artifact pixels / image pixels).
class AreaScorer : public Scorer {
 public:
  explicit AreaScorer(std::shared_ptr<const FixtureStore> store)
      : store_(std::move(store)) {}
  double Score(const RgbImage& image, const CallContext& ctx) override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

class ConstantScorer : public Scorer {
 public:
  explicit ConstantScorer(double value) : value_(value) {}
  double Score(const RgbImage&, const CallContext&) override { return value_; }

 private:
  double value_;
};

class ConstantJudge : public Judge {
 public:
  explicit ConstantJudge(std::string response) : response_(std::move(response)) {}
  std::string Assess(const RgbImage&, const std::string&,
                     const CallContext&) override {
    return response_;
  }

 private:
  std::string response_;
};

}  // namespace forgeline

#endif  // FORGELINE_MOCKS_H_
