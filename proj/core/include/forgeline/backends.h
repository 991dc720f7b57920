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

#ifndef FORGELINE_BACKENDS_H_
#define FORGELINE_BACKENDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/annotation.h"
#include "forgeline/image.h"
#include "forgeline/rle.h"

namespace forgeline {

// Label = fake iff fake_prob >= this.
inline constexpr double kFakeThreshold = 0.5;

struct ReportedRegion {
  std::string location;
  BinaryMask mask;
  std::optional<ArtifactType> artifact_type;
  std::string explanation;
};

// One analyzer answer: detection probability, free-text explanation and the
// localized regions with their masks.
struct AnalyzerReport {
  ImageLabel label = ImageLabel::kReal;
  double fake_prob = 0;
  std::string explanation;
  std::vector<ReportedRegion> regions;

  // Union of all region masks; all-zero of the given size when empty.
  BinaryMask UnionMask(int width, int height) const;
};

struct MemoryEntry {
  int iteration = 0;
  std::string explanation;
  bool operator==(const MemoryEntry&) const = default;
};

// Optional request context. `subject` names the manifest entry being
// processed; mocks use it to find ground truth, real services ignore it.
struct CallContext {
  std::string subject;
  uint64_t seed = 0;
};

// The pluggable roles. Implementations must be safe to call concurrently
// and behave as pure functions of their arguments.
class Analyzer {
 public:
  virtual ~Analyzer() = default;
  virtual AnalyzerReport Analyze(const RgbImage& image,
                                 const CallContext& ctx) = 0;
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual RgbImage Generate(const std::string& prompt, int width, int height,
                            const CallContext& ctx) = 0;
};

class Inpainter {
 public:
  virtual ~Inpainter() = default;
  // Returns a full image of the input's size; only masked pixels are used.
  virtual RgbImage Inpaint(const RgbImage& image, const BinaryMask& mask,
                           const std::string& explanation,
                           const CallContext& ctx) = 0;
};

class Reviser {
 public:
  virtual ~Reviser() = default;
  virtual std::string Revise(const std::string& prompt,
                             const std::vector<MemoryEntry>& memory) = 0;
};

class Captioner {
 public:
  virtual ~Captioner() = default;
  virtual std::string Caption(const RgbImage& image,
                              const CallContext& ctx) = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<double> EmbedText(const std::string& text) = 0;
  virtual std::vector<double> EmbedImage(const RgbImage& image) = 0;
  virtual int dim() const = 0;
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double Score(const RgbImage& image, const CallContext& ctx) = 0;
};

class Judge {
 public:
  virtual ~Judge() = default;
  // Returns the judge's raw text answer.
  virtual std::string Assess(const RgbImage& image, const std::string& prompt,
                             const CallContext& ctx) = 0;
};

enum class Role {
  kAnalyzer,
  kGenerator,
  kInpainter,
  kReviser,
  kCaptioner,
  kEmbedder,
  kScorer,
  kJudge,
};

inline constexpr Role kAllRoles[] = {
    Role::kAnalyzer, Role::kGenerator, Role::kInpainter, Role::kReviser,
    Role::kCaptioner, Role::kEmbedder, Role::kScorer, Role::kJudge};

std::string_view ToString(Role role);       // "analyzer"
std::string_view EndpointPath(Role role);   // "/analyze"
std::optional<Role> ParseRole(std::string_view name);

// Wire forms. Masks travel as {"width", "height", "rle"}.
nlohmann::json MaskToJson(const BinaryMask& mask);
// Throws CodecError for malformed payloads. Accepts either an "rle" array or
// a "png" field holding a base64 8-bit grayscale PNG.
BinaryMask MaskFromJson(const nlohmann::json& j);

nlohmann::json ReportToJson(const AnalyzerReport& report);
// Checks every region mask decodes to width x height and that label agrees
// with fake_prob. Throws CodecError / ValidationError.
AnalyzerReport ReportFromJson(const nlohmann::json& j, int width, int height);

}  // namespace forgeline

#endif  // FORGELINE_BACKENDS_H_
