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

#include "forgeline/mocks.h"

#include <cmath>

#include "forgeline/error.h"
#include "forgeline/raster.h"
#include "forgeline/rng.h"
#include "forgeline/text_metrics.h"

namespace forgeline {

namespace {

std::optional<RgbImage> TryLoad(const std::string& ref,
                                const std::string& base_dir) {
  if (ref.empty()) return std::nullopt;
  try {
    return LoadImageRef(ref, base_dir);
  } catch (const Error&) {
    return std::nullopt;
  }
}

void Normalize(std::vector<double>& v) {
  double norm = 0;
  for (double x : v) norm += x * x;
  if (norm == 0) {
    v.assign(v.size(), 0.0);
    v[0] = 1.0;
    return;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
}

}  // namespace

FixtureStore::FixtureStore(const DatasetManifest& manifest) {
  for (const auto& entry : manifest.entries) {
    FixtureSubject s;
    s.entry = entry;
    s.image = TryLoad(entry.image_ref, manifest.base_dir);
    if (entry.reference_ref)
      s.reference = TryLoad(*entry.reference_ref, manifest.base_dir);
    if ((s.entry.width <= 0 || s.entry.height <= 0) && s.image) {
      s.entry.width = s.image->width;
      s.entry.height = s.image->height;
    }
    if (s.entry.width <= 0 || s.entry.height <= 0)
      throw ConfigError("fixture " + entry.id + " has no dimensions");
    s.union_mask = BinaryMask(s.entry.width, s.entry.height);
    for (const auto& region : s.entry.regions) {
      s.region_masks.push_back(
          RasterizeRegion(region, s.entry.width, s.entry.height));
      s.union_mask |= s.region_masks.back();
    }
    subjects_.emplace(entry.id, std::move(s));
  }
}

const FixtureSubject& FixtureStore::Get(const std::string& subject) const {
  auto it = subjects_.find(subject);
  if (it == subjects_.end())
    throw ConfigError("mock backend: unknown subject \"" + subject + "\"");
  return it->second;
}

bool FixtureStore::Contains(const std::string& subject) const {
  return subjects_.contains(subject);
}

bool FixtureStore::AllFakesHaveReferences() const {
  for (const auto& [id, s] : subjects_)
    if (s.entry.label == ImageLabel::kFake && !s.reference) return false;
  return true;
}

BinaryMask FixtureStore::ResidualArtifacts(const std::string& subject,
                                           const RgbImage& image) const {
  const auto& s = Get(subject);
  BinaryMask residual = s.union_mask;
  if (s.reference && s.reference->SameShape(image))
    residual &= DiffMask(image, *s.reference);
  return residual;
}

std::optional<InpainterKind> ParseInpainterKind(std::string_view text) {
  if (text == "identity") return InpainterKind::kIdentity;
  if (text == "perfect") return InpainterKind::kPerfect;
  if (text == "constant_fill") return InpainterKind::kConstantFill;
  return std::nullopt;
}

std::optional<ScorerKind> ParseScorerKind(std::string_view text) {
  if (text == "area") return ScorerKind::kArea;
  if (text == "constant") return ScorerKind::kConstant;
  return std::nullopt;
}

std::string_view ToString(InpainterKind kind) {
  switch (kind) {
    case InpainterKind::kIdentity:
      return "identity";
    case InpainterKind::kPerfect:
      return "perfect";
    case InpainterKind::kConstantFill:
      return "constant_fill";
  }
  return "";
}

std::string_view ToString(ScorerKind kind) {
  return kind == ScorerKind::kArea ? "area" : "constant";
}

nlohmann::json MockConfig::ToJson() const {
  return {{"perturb_radius", perturb_radius},
          {"drop_prob", drop_prob},
          {"seed", seed},
          {"inpainter_kind", ToString(inpainter_kind)},
          {"scorer_kind", ToString(scorer_kind)},
          {"fill_color", fill_color},
          {"caption", caption},
          {"judge_response", judge_response},
          {"constant_score", constant_score}};
}

MockConfig MockConfig::FromJson(const nlohmann::json& j) {
  MockConfig c;
  try {
    c.perturb_radius = j.value("perturb_radius", c.perturb_radius);
    c.drop_prob = j.value("drop_prob", c.drop_prob);
    c.seed = j.value("seed", c.seed);
    if (j.contains("inpainter_kind")) {
      auto kind = ParseInpainterKind(j["inpainter_kind"].get<std::string>());
      if (!kind) throw ConfigError("unknown inpainter_kind");
      c.inpainter_kind = *kind;
    }
    if (j.contains("scorer_kind")) {
      auto kind = ParseScorerKind(j["scorer_kind"].get<std::string>());
      if (!kind) throw ConfigError("unknown scorer_kind");
      c.scorer_kind = *kind;
    }
    if (j.contains("fill_color"))
      c.fill_color = j["fill_color"].get<std::array<uint8_t, 3>>();
    c.caption = j.value("caption", c.caption);
    c.judge_response = j.value("judge_response", c.judge_response);
    c.constant_score = j.value("constant_score", c.constant_score);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad mock config: ") + e.what());
  }
  if (c.perturb_radius < 0) throw ConfigError("perturb_radius must be >= 0");
  if (!(c.drop_prob >= 0 && c.drop_prob <= 1))
    throw ConfigError("drop_prob must be in [0,1]");
  return c;
}

AnalyzerReport OracleAnalyzer::Analyze(const RgbImage& image,
                                       const CallContext& ctx) {
  const auto& s = store_->Get(ctx.subject);
  if (image.width != s.entry.width || image.height != s.entry.height)
    throw DimensionError("oracle analyzer: image does not match subject " +
                         ctx.subject);
  std::optional<BinaryMask> diff;
  if (s.reference && s.reference->SameShape(image))
    diff = DiffMask(image, *s.reference);
  const uint64_t subject_key = Fnv1a64(ctx.subject);
  AnalyzerReport report;
  report.label = s.entry.label;
  report.fake_prob = s.entry.label == ImageLabel::kFake ? 1.0 : 0.0;
  for (size_t i = 0; i < s.entry.regions.size(); ++i) {
    const auto& gt = s.entry.regions[i];
    BinaryMask mask = s.region_masks[i];
    if (diff) mask &= *diff;
    if (mask.Area() == 0) continue;
    if (ToUnit(CounterHash(config_.seed, subject_key, i)) < config_.drop_prob)
      continue;
    mask = Dilate(mask, config_.perturb_radius);
    report.regions.push_back(
        {gt.location, std::move(mask), gt.artifact_type, gt.explanation});
  }
  for (const auto& r : report.regions) {
    if (!report.explanation.empty()) report.explanation += ' ';
    report.explanation += r.explanation;
  }
  return report;
}

RgbImage ProgressiveGenerator::Generate(const std::string& prompt, int width,
                                        int height, const CallContext& ctx) {
  const auto& s = store_->Get(ctx.subject);
  if (!s.image)
    throw ConfigError("progressive generator: no image for " + ctx.subject);
  if (s.image->width != width || s.image->height != height)
    throw DimensionError("progressive generator: requested size differs");
  size_t repaired = 0;
  constexpr std::string_view kClause = "Avoid:";
  for (size_t pos = prompt.find(kClause); pos != std::string::npos;
       pos = prompt.find(kClause, pos + kClause.size()))
    ++repaired;
  RgbImage out = *s.image;
  if (!s.reference) return out;
  repaired = std::min(repaired, s.region_masks.size());
  for (size_t i = 0; i < repaired; ++i) {
    const auto& mask = s.region_masks[i];
    for (size_t p = 0; p < mask.size(); ++p) {
      if (!mask[p]) continue;
      for (int c = 0; c < 3; ++c)
        out.pixels[p * 3 + c] = s.reference->pixels[p * 3 + c];
    }
  }
  return out;
}

RgbImage IdentityInpainter::Inpaint(const RgbImage& image, const BinaryMask&,
                                    const std::string&, const CallContext&) {
  return image;
}

RgbImage PerfectInpainter::Inpaint(const RgbImage& image,
                                   const BinaryMask& mask, const std::string&,
                                   const CallContext& ctx) {
  const auto& s = store_->Get(ctx.subject);
  if (!s.reference)
    throw ConfigError("perfect inpainter: no reference image for " +
                      ctx.subject);
  if (!s.reference->SameShape(image) || mask.width() != image.width ||
      mask.height() != image.height)
    throw DimensionError("perfect inpainter: shape mismatch");
  RgbImage out = image;
  for (size_t p = 0; p < mask.size(); ++p) {
    if (!mask[p]) continue;
    for (int c = 0; c < 3; ++c) out.pixels[p * 3 + c] = s.reference->pixels[p * 3 + c];
  }
  return out;
}

RgbImage ConstantFillInpainter::Inpaint(const RgbImage& image,
                                        const BinaryMask& mask,
                                        const std::string&,
                                        const CallContext&) {
  if (mask.width() != image.width || mask.height() != image.height)
    throw DimensionError("constant-fill inpainter: shape mismatch");
  RgbImage out = image;
  for (size_t p = 0; p < mask.size(); ++p) {
    if (!mask[p]) continue;
    for (int c = 0; c < 3; ++c) out.pixels[p * 3 + c] = color_[c];
  }
  return out;
}

std::string EchoReviser::Revise(const std::string& prompt,
                                const std::vector<MemoryEntry>& memory) {
  if (memory.empty()) return prompt;
  std::string out = prompt + " Avoid: ";
  for (size_t i = 0; i < memory.size(); ++i) {
    if (i > 0) out += "; ";
    out += memory[i].explanation;
  }
  return out;
}

std::vector<double> HashEmbedder::EmbedText(const std::string& text) {
  std::vector<double> v(kDim, 0.0);
  for (const auto& token : Tokenize(text)) {
    const uint64_t h = Fnv1a64(token);
    v[h % kDim] += ((h >> 32) & 1) ? -1.0 : 1.0;
  }
  Normalize(v);
  return v;
}

std::vector<double> HashEmbedder::EmbedImage(const RgbImage& image) {
  std::vector<double> v(kDim, 0.0);
  std::array<double, 4> counts{};
  const int half_w = std::max(1, image.width / 2);
  const int half_h = std::max(1, image.height / 2);
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      const uint8_t* px = image.at(r, c);
      const int q = (r >= half_h ? 2 : 0) + (c >= half_w ? 1 : 0);
      for (int k = 0; k < 3; ++k) v[q * 3 + k] += px[k] / 255.0;
      counts[q] += 1;
      const double luma = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
      const int bin = std::min(19, static_cast<int>(luma / 256.0 * 20));
      v[12 + bin] += 1;
    }
  }
  for (int q = 0; q < 4; ++q)
    for (int k = 0; k < 3; ++k)
      if (counts[q] > 0) v[q * 3 + k] /= counts[q];
  const double n = static_cast<double>(image.PixelCount());
  for (int b = 0; b < 20; ++b) v[12 + b] /= n;
  Normalize(v);
  return v;
}

double AreaScorer::Score(const RgbImage& image, const CallContext& ctx) {
  const auto residual = store_->ResidualArtifacts(ctx.subject, image);
  return 100.0 * (1.0 - static_cast<double>(residual.Area()) /
                            static_cast<double>(residual.size()));
}

}  // namespace forgeline
