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

#include "forgeline/robustness.h"

#include <cstdio>

#include "forgeline/concurrency.h"
#include "forgeline/error.h"
#include "forgeline/raster.h"
#include "forgeline/rng.h"

namespace forgeline {

using nlohmann::json;

namespace {

std::optional<double> Degradation(double clean, double perturbed) {
  if (clean == 0) return std::nullopt;
  return (clean - perturbed) / clean;
}

json OptionalPercent(const std::optional<double>& v) {
  return v ? json(100.0 * *v) : json(nullptr);
}

SegScore EvaluateCell(const DatasetManifest& manifest,
                      const std::vector<RgbImage>& images,
                      const std::vector<BinaryMask>& truths, Analyzer& analyzer,
                      const PerturbSpec& spec, Aggregation aggregation) {
  SegEvaluator eval;
  for (size_t i = 0; i < images.size(); ++i) {
    const auto& entry = manifest.entries[i];
    PerturbSpec keyed = spec;
    keyed.seed = CounterHash(spec.seed, Fnv1a64(entry.id), 0);
    const RgbImage input = ApplyPerturbation(images[i], keyed);
    const AnalyzerReport report =
        analyzer.Analyze(input, {entry.id, spec.seed});
    eval.Add(entry.id, std::string(ToString(entry.content_type)),
             report.UnionMask(input.width, input.height), truths[i]);
  }
  return eval.Aggregate(aggregation);
}

}  // namespace

json RobustnessReport::ToJson() const {
  json rows_j = json::array();
  for (const auto& row : rows) {
    json j = {{"spec", row.spec.ToString()},
              {"label", row.spec.Label()},
              {"failed", row.failed}};
    if (row.failed) {
      j["error"] = row.error;
    } else {
      j["miou"] = 100.0 * row.score.miou;
      j["f1"] = 100.0 * row.score.f1;
      j["miou_degradation"] = OptionalPercent(row.miou_degradation);
      j["f1_degradation"] = OptionalPercent(row.f1_degradation);
    }
    rows_j.push_back(std::move(j));
  }
  json j = {{"schema_version", 1},
            {"kind", "robustness"},
            {"aggregation", aggregation == Aggregation::kMacro ? "macro" : "micro"},
            {"rows", std::move(rows_j)}};
  if (clean) j["clean"] = ScoreToJson(*clean);
  return j;
}

std::string RobustnessReport::ToTable() const {
  auto cell = [](double v, const std::optional<double>& d) {
    char buf[64];
    if (d) {
      std::snprintf(buf, sizeof buf, "%.2f (%+.2f%%)", 100.0 * v, -100.0 * *d);
    } else {
      std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
    }
    return std::string(buf);
  };
  auto pad = [](std::string s, size_t width) {
    // Pad by code points so the sigma label lines up.
    size_t cps = 0;
    for (unsigned char ch : s) cps += (ch & 0xC0) != 0x80;
    if (cps < width) s.append(width - cps, ' ');
    return s;
  };
  std::string out = pad("Perturbation", 28) + pad("mIoU", 20) + "F1\n";
  for (const auto& row : rows) {
    out += pad(row.spec.Label(), 28);
    if (row.failed) {
      out += "FAILED: " + row.error + "\n";
      continue;
    }
    const bool is_clean = row.spec.kind == PerturbKind::kNone;
    out += pad(cell(row.score.miou, is_clean ? std::nullopt : row.miou_degradation), 20);
    out += cell(row.score.f1, is_clean ? std::nullopt : row.f1_degradation) + "\n";
  }
  return out;
}

RobustnessReport RunRobustness(const DatasetManifest& manifest,
                               Analyzer& analyzer,
                               std::span<const PerturbSpec> grid,
                               const RobustnessOptions& options) {
  if (grid.empty()) throw ConfigError("robustness grid is empty");
  std::vector<RgbImage> images;
  std::vector<BinaryMask> truths;
  for (const auto& entry : manifest.entries) {
    images.push_back(LoadImageRef(entry.image_ref, manifest.base_dir));
    if (images.back().width != entry.width || images.back().height != entry.height)
      throw DimensionError("image " + entry.id + " does not match its manifest size");
    truths.push_back(GroundTruthMask(entry));
  }

  RobustnessReport report;
  report.aggregation = options.aggregation;
  report.rows.resize(grid.size());
  bool has_clean = false;
  for (const auto& spec : grid) has_clean = has_clean || spec.kind == PerturbKind::kNone;

  // The extra trailing cell is the clean baseline when the grid lacks one.
  const size_t cells = grid.size() + (has_clean ? 0 : 1);
  std::vector<RobustnessRow> results(cells);
  ParallelFor(cells, options.max_parallel, [&](size_t i) {
    RobustnessRow& row = results[i];
    row.spec = i < grid.size() ? grid[i] : PerturbSpec::Parse("none");
    if (row.spec.kind == PerturbKind::kNoise && row.spec.seed == 0)
      row.spec.seed = options.seed;
    try {
      row.score = EvaluateCell(manifest, images, truths, analyzer, row.spec,
                               options.aggregation);
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.what();
    }
  });

  for (const auto& row : results) {
    if (row.spec.kind == PerturbKind::kNone && !row.failed) {
      report.clean = row.score;
      break;
    }
  }
  for (size_t i = 0; i < grid.size(); ++i) {
    RobustnessRow row = results[i];
    if (!row.failed && report.clean) {
      row.miou_degradation = Degradation(report.clean->miou, row.score.miou);
      row.f1_degradation = Degradation(report.clean->f1, row.score.f1);
    }
    report.rows[i] = std::move(row);
  }
  return report;
}

}  // namespace forgeline
