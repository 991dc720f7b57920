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

#ifndef FORGELINE_TOOLS_CLI_H_
#define FORGELINE_TOOLS_CLI_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "forgeline/annotation.h"
#include "forgeline/backend_suite.h"

namespace forgeline::cli {

enum ExitCode {
  kExitOk = 0,
  kExitValidation = 1,
  kExitBackend = 2,
  kExitIo = 3,
  kExitUsage = 64,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw flag values of the selected subcommand, keyed by long name without
// dashes. Flags are parsed as strings and converted on lookup so that flag
// values and config-file values go through the same checks.
struct RawFlags {
  std::map<std::string, std::vector<std::string>> values;
  std::map<std::string, bool> switches;
};

// Lookup context for one run: flag > config file > default. Every resolved
// value is recorded for the config echo.
class Context {
 public:
  Context(std::string command, std::vector<std::string> argv, RawFlags flags);

  std::optional<std::string> Str(const std::string& key);
  std::string Str(const std::string& key, const std::string& fallback);
  std::string RequireStr(const std::string& key);
  std::optional<int64_t> Int(const std::string& key);
  int64_t Int(const std::string& key, int64_t fallback);
  uint64_t Seed();
  std::optional<double> Double(const std::string& key);
  double Double(const std::string& key, double fallback);
  bool Switch(const std::string& key);
  // Comma-separated or repeated flag values, or a config-file array.
  std::vector<std::string> List(const std::string& key);

  const std::string& out_dir() const { return out_dir_; }
  std::string OutPath(const std::string& name) const;

  // --backends > FORGELINE_BACKENDS > config "backends" > all mocks, then
  // FORGELINE_<ROLE>_URL overrides.
  BackendConfig Backends();
  // Strictly validated manifest from --manifest.
  DatasetManifest Manifest();

  // Writes JSON under the output directory.
  void WriteJson(const std::string& name, const nlohmann::json& j) const;
  void WriteText(const std::string& name, const std::string& text) const;
  // config_echo.json: argv, every resolved option and the backend config.
  void WriteEcho() const;

 private:
  const nlohmann::json* ConfigValue(const std::string& key) const;
  const std::vector<std::string>* FlagValue(const std::string& key) const;
  void Record(const std::string& key, nlohmann::json value);

  std::string command_;
  std::vector<std::string> argv_;
  RawFlags flags_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json resolved_ = nlohmann::json::object();
  nlohmann::json backends_ = nullptr;
  std::string out_dir_;
};

using Handler = int (*)(Context&);

struct Command {
  std::string path;         // "dataset validate"
  std::string description;
  std::vector<std::string> options;   // value options beyond the common set
  std::vector<std::string> switches;  // boolean flags
  Handler handler;
};

const std::vector<Command>& Commands();

// Handlers, grouped by source file.
int DatasetValidate(Context& ctx);
int DatasetStatsCmd(Context& ctx);
int EvalSeg(Context& ctx);
int EvalText(Context& ctx);
int EvalDetect(Context& ctx);
int EvalGrowth(Context& ctx);
int RefineRegen(Context& ctx);
int RefineInpaint(Context& ctx);
int Robustness(Context& ctx);
int CurateCluster(Context& ctx);
int CurateSample(Context& ctx);
int CurateFilter(Context& ctx);
int BackendsPing(Context& ctx);
int BackendsServe(Context& ctx);

// Reads a JSONL file into objects; throws IoError / ValidationError.
std::vector<nlohmann::json> ReadJsonl(const std::string& path);

}  // namespace forgeline::cli

#endif  // FORGELINE_TOOLS_CLI_H_
