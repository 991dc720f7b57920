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

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "forgeline/error.h"

namespace forgeline {

using nlohmann::json;

void MemoryBank::Append(int iteration, std::string explanation) {
  if (!entries_.empty() && iteration < entries_.back().iteration)
    throw std::invalid_argument("memory bank iterations must not decrease");
  entries_.push_back({iteration, std::move(explanation)});
}

std::string RevisePrompt(const std::string& prompt, const MemoryBank& memory,
                         Reviser& reviser) {
  return reviser.Revise(prompt, memory.entries());
}

std::string RegenImageName(int t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "iter_%02d.png", t);
  return buf;
}

std::optional<double> RegenRunLog::pre_score() const {
  if (iterations.empty()) return std::nullopt;
  return iterations.front().score;
}

std::optional<double> RegenRunLog::post_score() const {
  if (iterations.empty()) return std::nullopt;
  return iterations.back().score;
}

json RegenRunLog::ToJson() const {
  json iters = json::array();
  for (const auto& it : iterations) {
    json j = {{"t", it.t},
              {"prompt", it.prompt},
              {"image", RegenImageName(it.t)},
              {"image_hash", ImageHash(it.image)},
              {"memory_size", it.memory_size}};
    if (it.report) {
      j["report"] = ReportToJson(*it.report);
      j["region_count"] = it.report->regions.size();
    }
    if (it.score) j["score"] = *it.score;
    iters.push_back(std::move(j));
  }
  json mem = json::array();
  for (const auto& m : memory.entries())
    mem.push_back({{"iteration", m.iteration}, {"explanation", m.explanation}});
  json cfg = {{"max_iters", config.max_iters},
              {"early_stop", config.early_stop},
              {"initial_prompt", config.initial_prompt
                                     ? json(*config.initial_prompt)
                                     : json(nullptr)},
              {"backends", backends}};
  json j = {{"schema_version", 1},
            {"kind", "regen_run_log"},
            {"subject", config.subject},
            {"seed", config.seed},
            {"status", ToString(status)},
            {"config", std::move(cfg)},
            {"iterations", std::move(iters)},
            {"memory", std::move(mem)}};
  if (status == RunStatus::kAborted) {
    j["error"] = error;
    j["error_kind"] = error_kind;
  }
  if (auto s = pre_score()) j["pre_score"] = *s;
  if (auto s = post_score()) j["post_score"] = *s;
  return j;
}

RegenRunLog RunRegeneration(const RgbImage& initial, const BackendSuite& suite,
                            const RegenConfig& config) {
  std::vector<Role> required = {Role::kAnalyzer, Role::kReviser,
                                Role::kGenerator};
  if (!config.initial_prompt) required.push_back(Role::kCaptioner);
  suite.Require(required);
  if (config.max_iters < 0) throw ConfigError("max_iters must be >= 0");

  RegenRunLog log;
  log.config = config;
  log.backends = suite.Describe();
  const CallContext ctx{config.subject, config.seed};

  auto score = [&](const RgbImage& image) -> std::optional<double> {
    if (!suite.scorer) return std::nullopt;
    return suite.scorer->Score(image, ctx);
  };

  try {
    RgbImage image = initial;
    std::string prompt = config.initial_prompt
                             ? *config.initial_prompt
                             : suite.captioner->Caption(initial, ctx);
    for (int t = 0;; ++t) {
      RegenIteration it;
      it.t = t;
      it.prompt = prompt;
      it.image = image;
      it.score = score(image);
      if (t == config.max_iters) {
        it.memory_size = log.memory.size();
        log.iterations.push_back(std::move(it));
        break;
      }
      AnalyzerReport report = suite.analyzer->Analyze(image, ctx);
      for (const auto& region : report.regions)
        log.memory.Append(t, region.explanation);
      it.memory_size = log.memory.size();
      const bool clean = report.regions.empty();
      it.report = std::move(report);
      log.iterations.push_back(std::move(it));
      if (clean && config.early_stop) {
        log.status = RunStatus::kEarlyStop;
        break;
      }
      prompt = RevisePrompt(prompt, log.memory, *suite.reviser);
      RgbImage next =
          suite.generator->Generate(prompt, image.width, image.height, ctx);
      if (!next.SameShape(image))
        throw ProtocolError(suite.descriptors.at(Role::kGenerator),
                            "generated image has the wrong shape");
      image = std::move(next);
    }
  } catch (const Error& e) {
    log.status = RunStatus::kAborted;
    log.error = e.what();
    log.error_kind = ErrorKind(e);
  }
  return log;
}

void PersistRegenLog(const RegenRunLog& log, const std::string& run_dir) {
  std::filesystem::create_directories(run_dir);
  for (const auto& it : log.iterations)
    WritePng(run_dir + "/" + RegenImageName(it.t), it.image);
  const std::string text = log.ToJson().dump(2) + "\n";
  WriteFileBytes(run_dir + "/run_log.json",
                 {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

}  // namespace forgeline
