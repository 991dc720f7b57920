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

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <thread>

#include "cli.h"
#include "forgeline/assets.h"
#include "forgeline/backend_server.h"
#include "forgeline/backend_suite.h"
#include "forgeline/concurrency.h"
#include "forgeline/conformance.h"
#include "forgeline/curation.h"
#include "forgeline/error.h"
#include "forgeline/image.h"
#include "forgeline/manifest.h"
#include "forgeline/perturb.h"
#include "forgeline/robustness.h"

namespace forgeline::cli {

using nlohmann::json;

int Robustness(Context& ctx) {
  const DatasetManifest manifest = ctx.Manifest();
  const uint64_t seed = ctx.Seed();
  std::vector<PerturbSpec> grid;
  const auto specs = ctx.List("grid");
  if (specs.empty()) {
    grid = DefaultRobustnessGrid(seed);
  } else {
    for (const auto& s : specs) {
      grid.push_back(PerturbSpec::Parse(s));
      grid.back().seed = seed;
    }
  }
  RobustnessOptions options;
  options.seed = seed;
  options.max_parallel = static_cast<size_t>(ctx.Int("parallel", 4));
  const std::string aggregation = ctx.Str("aggregation", "macro");
  if (aggregation == "micro") {
    options.aggregation = Aggregation::kMicro;
  } else if (aggregation != "macro") {
    throw UsageError("--aggregation must be macro or micro");
  }
  const Role roles[] = {Role::kAnalyzer};
  const BackendSuite suite = BuildSuite(ctx.Backends(), &manifest, roles);
  const RobustnessReport report = RunRobustness(manifest, *suite.analyzer, grid, options);
  ctx.WriteJson("robustness_report.json", report.ToJson());
  const std::string table = report.ToTable();
  ctx.WriteText("robustness_table.txt", table);
  std::cout << table;
  for (const auto& row : report.rows)
    if (row.failed) return kExitBackend;
  return kExitOk;
}

int CurateCluster(Context& ctx) {
  const DatasetManifest manifest = ctx.Manifest();
  const auto k = ctx.Int("k");
  if (!k) throw UsageError("--k is required");
  const uint64_t seed = ctx.Seed();
  const int max_iters = static_cast<int>(ctx.Int("iters", 100));
  const Role roles[] = {Role::kEmbedder};
  const BackendSuite suite = BuildSuite(ctx.Backends(), &manifest, roles);
  std::vector<std::vector<double>> features(manifest.entries.size());
  ParallelFor(features.size(), static_cast<size_t>(ctx.Int("parallel", 4)),
              [&](size_t i) {
                const auto& entry = manifest.entries[i];
                features[i] = suite.embedder->EmbedImage(
                    LoadImageRef(entry.image_ref, manifest.base_dir));
              });
  const KMeansResult res = KMeans(features, static_cast<int>(*k), seed, max_iters);
  json assignments = json::array();
  for (size_t i = 0; i < res.assignments.size(); ++i)
    assignments.push_back({{"id", manifest.entries[i].id}, {"cluster", res.assignments[i]}});
  ctx.WriteJson("clusters.json", {{"schema_version", 1},
                                  {"kind", "curation_cluster"},
                                  {"k", *k},
                                  {"seed", seed},
                                  {"assignments", std::move(assignments)},
                                  {"centroids", res.centroids},
                                  {"objective", res.objective},
                                  {"iterations", res.iterations},
                                  {"converged", res.converged}});
  std::cout << "k=" << *k << " iterations=" << res.iterations
            << " objective=" << res.objective.back() << "\n";
  return kExitOk;
}

int CurateSample(Context& ctx) {
  const std::string clusters_path = ctx.RequireStr("clusters");
  const auto bytes = ReadFileBytes(clusters_path);
  const json clusters = json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (clusters.is_discarded() || !clusters.contains("assignments"))
    throw ValidationError(clusters_path + " is not a cluster report");
  std::vector<std::string> ids;
  std::vector<int> labels;
  try {
    for (const auto& a : clusters["assignments"]) {
      ids.push_back(a.at("id").get<std::string>());
      labels.push_back(a.at("cluster").get<int>());
    }
  } catch (const json::exception& e) {
    throw ValidationError(clusters_path + ": malformed assignment");
  }
  const auto n = ctx.Int("n-per-cluster");
  if (!n || *n < 0) throw UsageError("--n-per-cluster (>= 0) is required");
  const uint64_t seed = ctx.Seed();
  std::vector<std::string> selected;
  for (size_t i : StratifiedSample(labels, static_cast<int>(*n), seed))
    selected.push_back(ids[i]);
  ctx.WriteJson("sample.json", {{"schema_version", 1},
                                {"kind", "curation_sample"},
                                {"n_per_cluster", *n},
                                {"seed", seed},
                                {"selected", selected}});
  if (ctx.Str("manifest")) {
    DatasetManifest manifest = ctx.Manifest();
    const std::set<std::string> keep(selected.begin(), selected.end());
    std::erase_if(manifest.entries,
                  [&](const AnnotatedImage& e) { return !keep.contains(e.id); });
    WriteManifest(ctx.OutPath("sampled_manifest.jsonl"), manifest);
  }
  std::cout << "selected " << selected.size() << " of " << ids.size() << "\n";
  return kExitOk;
}

int CurateFilter(Context& ctx) {
  DatasetManifest manifest = ctx.Manifest();
  std::string prompt(PromptAsset(kCurationPromptAsset));
  if (const auto path = ctx.Str("prompt-file")) {
    const auto bytes = ReadFileBytes(*path);
    prompt.assign(bytes.begin(), bytes.end());
  }
  const Role roles[] = {Role::kJudge};
  const BackendSuite suite = BuildSuite(ctx.Backends(), &manifest, roles);
  const JudgeFilterResult result =
      JudgeFilter(manifest, *suite.judge, prompt,
                  static_cast<size_t>(ctx.Int("parallel", 4)), ctx.Seed());
  ctx.WriteJson("curation_report.json", result.ToJson());
  const std::set<std::string> keep(result.kept.begin(), result.kept.end());
  std::erase_if(manifest.entries,
                [&](const AnnotatedImage& e) { return !keep.contains(e.id); });
  WriteManifest(ctx.OutPath("kept_manifest.jsonl"), manifest);
  for (const auto& o : result.outcomes)
    if (!o.label) std::cerr << o.id << ": " << o.diagnostic << ": \"" << o.raw_response << "\"\n";
  std::cout << "kept " << result.kept.size() << " of " << result.outcomes.size()
            << ", " << result.failed() << " unparseable\n";
  return kExitOk;
}

int BackendsPing(Context& ctx) {
  const BackendConfig config = ctx.Backends();
  std::vector<Role> roles;
  for (const auto& name : ctx.List("role")) {
    const auto role = ParseRole(name);
    if (!role) throw UsageError("unknown role " + name);
    roles.push_back(*role);
  }
  if (roles.empty())
    for (const auto& [role, ep] : config.endpoints) roles.push_back(role);
  json results = json::object();
  bool all_passed = true;
  for (Role role : roles) {
    auto it = config.endpoints.find(role);
    const std::string name(ToString(role));
    if (it == config.endpoints.end()) {
      results[name] = {{"endpoint", nullptr}, {"passed", false}, {"detail", "not configured"}};
      all_passed = false;
      std::cout << name << ": not configured\n";
      continue;
    }
    if (it->second.is_mock()) {
      results[name] = {{"endpoint", it->second.Describe()}, {"passed", true}, {"mock", true}};
      std::cout << name << ": " << it->second.Describe() << " (in-process)\n";
      continue;
    }
    const auto checks = RunConformance(role, it->second);
    bool passed = true;
    for (const auto& c : checks) {
      passed = passed && c.passed;
      std::cout << name << ": " << (c.passed ? "PASS " : "FAIL ") << c.name
                << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
    all_passed = all_passed && passed;
    results[name] = {{"endpoint", it->second.Describe()},
                     {"passed", passed},
                     {"checks", ConformanceToJson(checks)}};
  }
  ctx.WriteJson("backends_ping.json",
                {{"schema_version", 1}, {"kind", "backends_ping"}, {"roles", results}});
  return all_passed ? kExitOk : kExitBackend;
}

namespace {
std::atomic<bool> g_stop{false};
void OnSignal(int) { g_stop = true; }
}  // namespace

int BackendsServe(Context& ctx) {
  const DatasetManifest manifest = ctx.Manifest();
  const BackendConfig config = ctx.Backends();
  std::vector<Role> roles(std::begin(kAllRoles), std::end(kAllRoles));
  BackendServer server(BuildSuite(config, &manifest, {}, roles));
  const int port = server.Start(static_cast<int>(ctx.Int("port", 0)));
  std::cout << "serving on " << server.url() << " (port " << port << ")\n" << std::flush;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.Stop();
  return kExitOk;
}

}  // namespace forgeline::cli
