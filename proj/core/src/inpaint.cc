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

#include <cstdio>
#include <filesystem>

#include "forgeline/concurrency.h"
#include "forgeline/error.h"

namespace forgeline {

using nlohmann::json;

namespace {

void CheckShapes(const RgbImage& base, const RgbImage& patch,
                 const BinaryMask& mask) {
  if (!base.SameShape(patch) || mask.width() != base.width ||
      mask.height() != base.height)
    throw DimensionError("composite: image, patch and mask sizes differ");
}

}  // namespace

void CompositeInto(RgbImage& base, const RgbImage& patch,
                   const BinaryMask& mask) {
  CheckShapes(base, patch, mask);
  for (size_t p = 0; p < mask.size(); ++p) {
    if (!mask[p]) continue;
    for (int c = 0; c < 3; ++c) base.pixels[p * 3 + c] = patch.pixels[p * 3 + c];
  }
}

RgbImage CompositeRegion(const RgbImage& base, const RgbImage& patch,
                         const BinaryMask& mask) {
  RgbImage out = base;
  CompositeInto(out, patch, mask);
  return out;
}

std::vector<RegionTriplet> TripletsFromReport(const AnalyzerReport& report,
                                              int width, int height) {
  std::vector<RegionTriplet> out;
  out.reserve(report.regions.size());
  for (const auto& r : report.regions) {
    if (r.mask.width() != width || r.mask.height() != height)
      throw DimensionError("region mask does not match image size");
    out.push_back({r.location, r.mask, r.explanation});
  }
  return out;
}

std::string_view ToString(InpaintMode mode) {
  return mode == InpaintMode::kPaperFaithful ? "paper_faithful" : "sequential";
}

std::optional<InpaintMode> ParseInpaintMode(std::string_view text) {
  if (text == "paper_faithful") return InpaintMode::kPaperFaithful;
  if (text == "sequential") return InpaintMode::kSequential;
  return std::nullopt;
}

std::string InpaintImageName(int t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "iter_%02d.png", t);
  return buf;
}

std::string InpaintRegionImageName(int t, size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "iter_%02d_region_%02zu.png", t, i);
  return buf;
}

std::optional<double> InpaintRunLog::post_score() const {
  if (iterations.empty()) return initial_score;
  return iterations.back().score;
}

json InpaintRunLog::ToJson() const {
  json iters = json::array();
  for (const auto& it : iterations) {
    json triplets = json::array();
    for (const auto& tr : it.triplets)
      triplets.push_back({{"location", tr.location},
                          {"mask", MaskToJson(tr.mask)},
                          {"explanation", tr.explanation}});
    json j = {{"t", it.t},
              {"triplets", std::move(triplets)},
              {"input_hash", ImageHash(it.input)},
              {"output", InpaintImageName(it.t + 1)},
              {"output_hash", ImageHash(it.output)},
              {"changed_pixels", it.changed_pixels},
              {"union_area", it.union_area},
              {"outside_preserved", it.outside_preserved}};
    if (!it.region_images.empty()) {
      json names = json::array();
      for (size_t i = 0; i < it.region_images.size(); ++i)
        names.push_back(InpaintRegionImageName(it.t, i));
      j["region_images"] = std::move(names);
    }
    if (it.score) j["score"] = *it.score;
    if (it.residual_artifacts) j["residual_artifacts"] = *it.residual_artifacts;
    iters.push_back(std::move(j));
  }
  json cfg = {{"max_iters", config.max_iters},
              {"mode", ToString(config.mode)},
              {"early_stop", config.early_stop},
              {"backends", backends}};
  json j = {{"schema_version", 1},
            {"kind", "inpaint_run_log"},
            {"subject", config.subject},
            {"seed", config.seed},
            {"status", ToString(status)},
            {"config", std::move(cfg)},
            {"input", InpaintImageName(0)},
            {"input_hash", ImageHash(initial)},
            {"iterations", std::move(iters)}};
  if (initial_residual) j["input_residual_artifacts"] = *initial_residual;
  if (status == RunStatus::kAborted) {
    j["error"] = error;
    j["error_kind"] = error_kind;
  }
  if (initial_score) j["pre_score"] = *initial_score;
  if (auto s = post_score()) j["post_score"] = *s;
  return j;
}

InpaintRunLog RunInpainting(const RgbImage& image, const BackendSuite& suite,
                            const InpaintConfig& config) {
  const Role required[] = {Role::kAnalyzer, Role::kInpainter};
  suite.Require(required);
  if (config.max_iters < 0) throw ConfigError("max_iters must be >= 0");

  InpaintRunLog log;
  log.config = config;
  log.backends = suite.Describe();
  log.initial = image;
  const CallContext ctx{config.subject, config.seed};
  const std::string inpainter_id = suite.descriptors.count(Role::kInpainter)
                                       ? suite.descriptors.at(Role::kInpainter)
                                       : "inpainter";

  auto inpaint = [&](const RgbImage& img, const RegionTriplet& tr) {
    RgbImage out = suite.inpainter->Inpaint(img, tr.mask, tr.explanation, ctx);
    if (!out.SameShape(img))
      throw ProtocolError(inpainter_id, "inpainted image has the wrong shape");
    return out;
  };

  try {
    if (suite.scorer) log.initial_score = suite.scorer->Score(image, ctx);
    if (config.residual_probe) log.initial_residual = config.residual_probe(image);
    RgbImage current = image;
    for (int t = 0; t < config.max_iters; ++t) {
      InpaintIteration it;
      it.t = t;
      it.input = current;
      const AnalyzerReport report = suite.analyzer->Analyze(current, ctx);
      it.triplets = TripletsFromReport(report, current.width, current.height);
      const size_t k = it.triplets.size();

      RgbImage next = current;
      std::vector<RgbImage> patches(k);
      if (config.mode == InpaintMode::kPaperFaithful) {
        ParallelFor(k, config.max_parallel,
                    [&](size_t i) { patches[i] = inpaint(current, it.triplets[i]); });
        for (size_t i = 0; i < k; ++i)
          CompositeInto(next, patches[i], it.triplets[i].mask);
      } else {
        for (size_t i = 0; i < k; ++i) {
          patches[i] = inpaint(next, it.triplets[i]);
          CompositeInto(next, patches[i], it.triplets[i].mask);
        }
      }

      BinaryMask united(current.width, current.height);
      for (const auto& tr : it.triplets) united |= tr.mask;
      it.union_area = united.Area();
      for (size_t p = 0; p < united.size(); ++p) {
        bool same = true;
        for (int c = 0; c < 3; ++c)
          same = same && current.pixels[p * 3 + c] == next.pixels[p * 3 + c];
        if (!same) {
          ++it.changed_pixels;
          if (!united[p]) it.outside_preserved = false;
        }
      }
      if (config.keep_region_images) it.region_images = std::move(patches);
      it.output = next;
      if (suite.scorer) it.score = suite.scorer->Score(next, ctx);
      if (config.residual_probe) it.residual_artifacts = config.residual_probe(next);
      log.iterations.push_back(std::move(it));
      current = std::move(next);
      if (k == 0 && config.early_stop) {
        log.status = RunStatus::kEarlyStop;
        break;
      }
    }
  } catch (const Error& e) {
    log.status = RunStatus::kAborted;
    log.error = e.what();
    log.error_kind = ErrorKind(e);
  }
  return log;
}

void PersistInpaintLog(const InpaintRunLog& log, const std::string& run_dir) {
  std::filesystem::create_directories(run_dir);
  WritePng(run_dir + "/" + InpaintImageName(0), log.initial);
  for (const auto& it : log.iterations) {
    WritePng(run_dir + "/" + InpaintImageName(it.t + 1), it.output);
    for (size_t i = 0; i < it.region_images.size(); ++i)
      WritePng(run_dir + "/" + InpaintRegionImageName(it.t, i),
               it.region_images[i]);
  }
  const std::string text = log.ToJson().dump(2) + "\n";
  WriteFileBytes(run_dir + "/run_log.json",
                 {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

}  // namespace forgeline
