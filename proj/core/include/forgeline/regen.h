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

#ifndef FORGELINE_REGEN_H_
#define FORGELINE_REGEN_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forgeline/backend_suite.h"
#include "forgeline/backends.h"
#include "forgeline/image.h"
#include "forgeline/run_status.h"

namespace forgeline {

// Append-only explanation history. Iteration indices never decrease.
class MemoryBank {
 public:
  // Throws std::invalid_argument if `iteration` is below the last one.
  void Append(int iteration, std::string explanation);

  const std::vector<MemoryEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<MemoryEntry> entries_;
};

// One revision step. The memory is only read.
std::string RevisePrompt(const std::string& prompt, const MemoryBank& memory,
                         Reviser& reviser);

struct RegenConfig {
  int max_iters = 2;
  // Stop as soon as the analyzer reports no regions. When false the loop
  // runs max_iters rounds regardless.
  bool early_stop = true;
  uint64_t seed = 0;
  // P_0. When absent the captioner describes the initial image.
  std::optional<std::string> initial_prompt;
  std::string subject;
};

struct RegenIteration {
  int t = 0;
  std::string prompt;  // P_t
  RgbImage image;      // I_t
  // Analyzer output for I_t. Absent on the final entry, which is the
  // generated image the loop ended on.
  std::optional<AnalyzerReport> report;
  size_t memory_size = 0;  // after this iteration's append
  std::optional<double> score;
};

struct RegenRunLog {
  RegenConfig config;
  nlohmann::json backends = nlohmann::json::object();
  RunStatus status = RunStatus::kCompleted;
  std::string error;
  std::string error_kind;
  std::vector<RegenIteration> iterations;
  MemoryBank memory;

  std::optional<double> pre_score() const;
  std::optional<double> post_score() const;

  // Image names are iteration-indexed ("iter_00.png", ...), relative to the
  // run directory.
  nlohmann::json ToJson() const;
};

std::string RegenImageName(int t);

// Runs the regeneration recurrence from `initial`. Backend failures abort
// the run; the partial log is returned with status kAborted. Requires
// analyzer, reviser and generator, plus captioner when no initial prompt is
// given (ConfigError otherwise). The scorer, when present, scores every
// logged image.
RegenRunLog RunRegeneration(const RgbImage& initial, const BackendSuite& suite,
                            const RegenConfig& config);

// Writes run_log.json and the iteration images into `run_dir`.
void PersistRegenLog(const RegenRunLog& log, const std::string& run_dir);

}  // namespace forgeline

#endif  // FORGELINE_REGEN_H_
