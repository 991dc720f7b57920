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

#include <algorithm>
#include <iostream>
#include <memory>
#include <set>

#include "cli.h"
#include "forgeline/backend_suite.h"
#include "forgeline/concurrency.h"
#include "forgeline/detection.h"
#include "forgeline/error.h"
#include "forgeline/image.h"
#include "forgeline/inpaint.h"
#include "forgeline/manifest.h"
#include "forgeline/mocks.h"
#include "forgeline/regen.h"

namespace forgeline::cli {

using nlohmann::json;

namespace {

std::vector<const AnnotatedImage*> SelectEntries(Context& ctx,
                                                 const DatasetManifest& manifest) {
  const auto ids = ctx.List("id");
  const std::set<std::string> wanted(ids.begin(), ids.end());
  std::vector<const AnnotatedImage*> out;
  for (const auto& entry : manifest.entries)
    if (wanted.empty() || wanted.contains(entry.id)) out.push_back(&entry);
  for (const auto& id : wanted)
    if (std::none_of(out.begin(), out.end(),
                     [&](const AnnotatedImage* e) { return e->id == id; }))
      throw UsageError("--id " + id + " is not in the manifest");
  return out;
}

struct RunOutcome {
  std::string id;
  RunStatus status = RunStatus::kCompleted;
  std::string error_kind;
  std::string error;
  size_t iterations = 0;
  std::optional<double> pre_score;
  std::optional<double> post_score;
};

int Summarize(Context& ctx, const std::string& pipeline,
              const std::vector<RunOutcome>& runs, json extra) {
  json runs_j = json::array();
  std::vector<double> pre, post;
  int code = kExitOk;
  for (const auto& r : runs) {
    json j = {{"id", r.id},
              {"status", ToString(r.status)},
              {"iterations", r.iterations},
              {"run_log", pipeline + "/" + r.id + "/run_log.json"}};
    if (r.status == RunStatus::kAborted) {
      j["error"] = r.error;
      j["error_kind"] = r.error_kind;
      int c = kExitValidation;
      if (r.error_kind == "transport" || r.error_kind == "protocol") c = kExitBackend;
      if (r.error_kind == "config") c = kExitUsage;
      if (code == kExitOk || c == kExitBackend) code = c;
      std::cerr << r.id << ": aborted: " << r.error << "\n";
    } else if (r.pre_score && r.post_score) {
      pre.push_back(*r.pre_score);
      post.push_back(*r.post_score);
    }
    if (r.pre_score) j["pre_score"] = *r.pre_score;
    if (r.post_score) j["post_score"] = *r.post_score;
    runs_j.push_back(std::move(j));
  }
  json summary = {{"schema_version", 1},
                  {"kind", "refine_summary"},
                  {"pipeline", pipeline},
                  {"runs", std::move(runs_j)}};
  summary.update(extra);
  if (!pre.empty()) {
    try {
      const GrowthReport g = GrowthRate(pre, post);
      summary["growth"] = g.ToJson();
      ctx.WriteJson(pipeline + "_growth.json", g.ToJson());
      std::printf("score %.2f -> %.2f  growth %+.2f%% (ratio of means)\n", g.pre_mean,
                  g.post_mean, g.growth_ratio_of_means);
    } catch (const ValidationError& e) {
      summary["growth_error"] = e.what();
    }
  }
  ctx.WriteJson(pipeline + "_summary.json", summary);
  size_t ok = 0;
  for (const auto& r : runs) ok += r.status != RunStatus::kAborted;
  std::cout << pipeline << ": " << ok << "/" << runs.size() << " run(s) finished\n";
  return code;
}

}  // namespace

int RefineRegen(Context& ctx) {
  const DatasetManifest manifest = ctx.Manifest();
  const auto entries = SelectEntries(ctx, manifest);
  RegenConfig base;
  base.max_iters = static_cast<int>(ctx.Int("iters", 2));
  if (base.max_iters < 0) throw UsageError("--iters must be >= 0");
  base.early_stop = !ctx.Switch("no-early-stop");
  base.seed = ctx.Seed();
  base.initial_prompt = ctx.Str("prompt");
  std::vector<Role> required = {Role::kAnalyzer, Role::kReviser, Role::kGenerator};
  if (!base.initial_prompt) required.push_back(Role::kCaptioner);
  const Role optional[] = {Role::kScorer};
  const BackendSuite suite = BuildSuite(ctx.Backends(), &manifest, required, optional);

  std::vector<RunOutcome> runs(entries.size());
  ParallelFor(entries.size(), static_cast<size_t>(ctx.Int("parallel", 4)),
              [&](size_t i) {
                const AnnotatedImage& entry = *entries[i];
                RegenConfig config = base;
                config.subject = entry.id;
                const RgbImage image = LoadImageRef(entry.image_ref, manifest.base_dir);
                const RegenRunLog log = RunRegeneration(image, suite, config);
                PersistRegenLog(log, ctx.OutPath("regen/" + entry.id));
                runs[i] = {entry.id,       log.status,
                           log.error_kind, log.error,
                           log.iterations.size(), log.pre_score(),
                           log.post_score()};
              });
  return Summarize(ctx, "regen", runs, {{"max_iters", base.max_iters}});
}

int RefineInpaint(Context& ctx) {
  const DatasetManifest manifest = ctx.Manifest();
  const auto entries = SelectEntries(ctx, manifest);
  InpaintConfig base;
  base.max_iters = static_cast<int>(ctx.Int("iters", 3));
  if (base.max_iters < 0) throw UsageError("--iters must be >= 0");
  const std::string mode = ctx.Str("mode", "paper_faithful");
  const auto parsed = ParseInpaintMode(mode);
  if (!parsed) throw UsageError("--mode must be paper_faithful or sequential");
  base.mode = *parsed;
  base.early_stop = !ctx.Switch("no-early-stop");
  base.keep_region_images = ctx.Switch("keep-region-images");
  base.seed = ctx.Seed();
  const size_t parallel = static_cast<size_t>(ctx.Int("parallel", 4));
  base.max_parallel = parallel;
  const Role required[] = {Role::kAnalyzer, Role::kInpainter};
  const Role optional[] = {Role::kScorer};
  const BackendSuite suite = BuildSuite(ctx.Backends(), &manifest, required, optional);

  // With paired references every run also logs the oracle artifact count.
  std::shared_ptr<const FixtureStore> store;
  if (std::all_of(entries.begin(), entries.end(),
                  [](const AnnotatedImage* e) { return e->reference_ref.has_value(); }))
    store = std::make_shared<FixtureStore>(manifest);

  std::vector<RunOutcome> runs(entries.size());
  ParallelFor(entries.size(), parallel, [&](size_t i) {
    const AnnotatedImage& entry = *entries[i];
    InpaintConfig config = base;
    config.subject = entry.id;
    if (store)
      config.residual_probe = [&store, id = entry.id](const RgbImage& img) {
        return static_cast<uint64_t>(store->ResidualArtifacts(id, img).Area());
      };
    const RgbImage image = LoadImageRef(entry.image_ref, manifest.base_dir);
    const InpaintRunLog log = RunInpainting(image, suite, config);
    PersistInpaintLog(log, ctx.OutPath("inpaint/" + entry.id));
    runs[i] = {entry.id,  log.status,          log.error_kind,
               log.error, log.iterations.size(), log.initial_score,
               log.post_score()};
  });
  return Summarize(ctx, "inpaint", runs,
                   {{"max_iters", base.max_iters},
                    {"mode", mode},
                    {"residual_probe", store != nullptr}});
}

}  // namespace forgeline::cli
