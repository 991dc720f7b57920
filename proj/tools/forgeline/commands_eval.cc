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

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>

#include "cli.h"
#include "forgeline/backend_suite.h"
#include "forgeline/backends.h"
#include "forgeline/concurrency.h"
#include "forgeline/detection.h"
#include "forgeline/error.h"
#include "forgeline/image.h"
#include "forgeline/manifest.h"
#include "forgeline/raster.h"
#include "forgeline/segmentation.h"
#include "forgeline/text_metrics.h"

namespace forgeline::cli {

using nlohmann::json;

namespace {

// Prediction line: {"id", "mask": {...}} or a manifest-style entry whose
// regions are rasterized.
// A prediction line carries either a wire mask or regions with polygons in
// manifest form; other region fields are ignored.
BinaryMask PredictionMask(const json& line, const AnnotatedImage& gt) {
  if (line.contains("mask")) return MaskFromJson(line["mask"]);
  if (!line.contains("regions") || !line["regions"].is_array())
    throw ValidationError("prediction " + gt.id + " has neither mask nor regions");
  BinaryMask out(gt.width, gt.height);
  try {
    for (const auto& region : line["regions"]) {
      for (const auto& poly : region.at("polygons")) {
        Polygon p;
        for (const auto& v : poly)
          p.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        out |= RasterizePolygon(p, gt.width, gt.height);
      }
    }
  } catch (const json::exception&) {
    throw ValidationError("prediction " + gt.id + ": malformed regions");
  }
  return out;
}

std::string Group(const AnnotatedImage& entry) {
  return std::string(ToString(entry.content_type));
}

void PrintScore(const char* name, const json& score) {
  std::printf("%-6s mIoU %6.2f  F1 %6.2f\n", name, score["miou"].get<double>(),
              score["f1"].get<double>());
}

std::vector<RegionText> RegionsOf(const AnnotatedImage& entry) {
  std::vector<RegionText> out;
  for (const auto& r : entry.regions) out.push_back({r.location, r.explanation});
  return out;
}

}  // namespace

int EvalSeg(Context& ctx) {
  const DatasetManifest manifest = ctx.Manifest();
  const auto predictions = ctx.Str("predictions");
  SegEvaluator eval;
  if (predictions) {
    std::map<std::string, json> by_id;
    for (auto& line : ReadJsonl(*predictions)) {
      const std::string id = line.value("id", "");
      if (id.empty()) throw ValidationError("prediction line without id");
      by_id[id] = std::move(line);
    }
    for (const auto& entry : manifest.entries) {
      auto it = by_id.find(entry.id);
      if (it == by_id.end()) throw ValidationError("no prediction for " + entry.id);
      eval.Add(entry.id, Group(entry), PredictionMask(it->second, entry),
               GroundTruthMask(entry));
    }
  } else {
    const Role roles[] = {Role::kAnalyzer};
    const BackendSuite suite = BuildSuite(ctx.Backends(), &manifest, roles);
    const uint64_t seed = ctx.Seed();
    const size_t n = manifest.entries.size();
    std::vector<std::optional<BinaryMask>> preds(n);
    ParallelFor(n, static_cast<size_t>(ctx.Int("parallel", 4)), [&](size_t i) {
      const auto& entry = manifest.entries[i];
      const RgbImage image = LoadImageRef(entry.image_ref, manifest.base_dir);
      preds[i] = suite.analyzer->Analyze(image, {entry.id, seed})
                     .UnionMask(image.width, image.height);
    });
    for (size_t i = 0; i < n; ++i)
      eval.Add(manifest.entries[i].id, Group(manifest.entries[i]), *preds[i],
               GroundTruthMask(manifest.entries[i]));
  }
  const std::string aggregation = ctx.Str("aggregation", "macro");
  if (aggregation != "macro" && aggregation != "micro")
    throw UsageError("--aggregation must be macro or micro");
  json report = eval.Report();
  report["primary_aggregation"] = aggregation;
  ctx.WriteJson("seg_report.json", report);
  PrintScore("macro", report["macro"]);
  PrintScore("micro", report["micro"]);
  return kExitOk;
}

int EvalText(Context& ctx) {
  const bool align = ctx.Switch("align");
  const bool css = !ctx.Switch("no-css");
  std::shared_ptr<Embedder> embedder;
  std::vector<std::tuple<std::string, std::string, std::string>> samples;
  std::optional<DatasetManifest> manifest;
  const auto input = ctx.Str("input");
  if (input) {
    for (const auto& line : ReadJsonl(*input)) {
      if (!line.contains("candidate") || !line.contains("reference"))
        throw ValidationError("text sample needs candidate and reference");
      std::string candidate = line["candidate"].get<std::string>();
      if (align) candidate = AlignFreeFormResponse(candidate);
      samples.emplace_back(line.value("id", std::to_string(samples.size())),
                           std::move(candidate), line["reference"].get<std::string>());
    }
  } else {
    manifest = ctx.Manifest();
  }
  std::vector<Role> needed;
  if (css) needed.push_back(Role::kEmbedder);
  if (manifest) needed.push_back(Role::kAnalyzer);
  BackendSuite suite;
  if (!needed.empty())
    suite = BuildSuite(ctx.Backends(), manifest ? &*manifest : nullptr, needed);
  if (manifest) {
    const uint64_t seed = ctx.Seed();
    for (const auto& entry : manifest->entries) {
      if (entry.regions.empty()) continue;
      const RgbImage image = LoadImageRef(entry.image_ref, manifest->base_dir);
      const AnalyzerReport report = suite.analyzer->Analyze(image, {entry.id, seed});
      std::vector<RegionText> predicted;
      for (const auto& r : report.regions) predicted.push_back({r.location, r.explanation});
      samples.emplace_back(entry.id, FormatRegionResponse(predicted),
                           FormatRegionResponse(RegionsOf(entry)));
    }
  }
  TextEvaluator eval(css ? suite.embedder.get() : nullptr);
  for (const auto& [id, cand, ref] : samples) eval.Add(id, cand, ref);
  const json report = eval.Report();
  ctx.WriteJson("text_report.json", report);
  std::cout << "ROUGE-L " << report["mean"]["rouge_l"].get<double>();
  if (css) std::cout << "  CSS " << report["mean"]["css"].get<double>();
  std::cout << "  (n=" << samples.size() << ")\n";
  return kExitOk;
}

int EvalDetect(Context& ctx) {
  const double threshold = ctx.Double("threshold", kFakeThreshold);
  if (!(threshold >= 0 && threshold <= 1))
    throw UsageError("--threshold must be in [0,1]");
  std::vector<DetectionRecord> records;
  if (const auto input = ctx.Str("input")) {
    for (const auto& line : ReadJsonl(*input)) {
      DetectionRecord r;
      try {
        r.id = line.value("id", "");
        r.fake_prob = line.at("fake_prob").get<double>();
        const auto label = ParseImageLabel(line.at("label").get<std::string>());
        if (!label) throw ValidationError("record " + r.id + ": unknown label");
        r.gt = *label;
        r.group = line.value("group", "");
      } catch (const json::exception& e) {
        throw ValidationError("malformed detection record: " + std::string(e.what()));
      }
      records.push_back(std::move(r));
    }
  } else {
    const DatasetManifest manifest = ctx.Manifest();
    const Role roles[] = {Role::kAnalyzer};
    const BackendSuite suite = BuildSuite(ctx.Backends(), &manifest, roles);
    const uint64_t seed = ctx.Seed();
    records.resize(manifest.entries.size());
    ParallelFor(records.size(), static_cast<size_t>(ctx.Int("parallel", 4)),
                [&](size_t i) {
                  const auto& entry = manifest.entries[i];
                  const RgbImage image = LoadImageRef(entry.image_ref, manifest.base_dir);
                  records[i] = {entry.id,
                                suite.analyzer->Analyze(image, {entry.id, seed}).fake_prob,
                                entry.label,
                                entry.label == ImageLabel::kReal
                                    ? "real"
                                    : entry.generator.value_or("unknown")};
                });
  }
  const DetectionResult result = DetectionAccuracy(records, threshold);
  ctx.WriteJson("detection_report.json", result.ToJson());
  for (const auto& [group, g] : result.groups)
    std::printf("%-20s %6.2f (n=%zu)\n", group.c_str(), g.accuracy(), g.n);
  std::printf("%-20s %6.2f (n=%zu)\n", "overall", result.overall.accuracy(),
              result.overall.n);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

int EvalGrowth(Context& ctx) {
  std::vector<double> pre, post;
  for (const auto& line : ReadJsonl(ctx.RequireStr("input"))) {
    try {
      pre.push_back(line.at("pre").get<double>());
      post.push_back(line.at("post").get<double>());
    } catch (const json::exception&) {
      throw ValidationError("growth line needs numeric pre and post");
    }
  }
  const GrowthReport g = GrowthRate(pre, post);
  ctx.WriteJson("growth_report.json", g.ToJson());
  std::printf("pre %.4f  post %.4f  ratio-of-means %+.2f%%", g.pre_mean, g.post_mean,
              g.growth_ratio_of_means);
  if (g.growth_per_sample_mean)
    std::printf("  per-sample %+.2f%%", *g.growth_per_sample_mean);
  std::printf("  (n=%zu)\n", g.n);
  return kExitOk;
}

}  // namespace forgeline::cli
