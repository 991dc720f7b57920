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

#include <iostream>

#include "cli.h"
#include "forgeline/manifest.h"

namespace forgeline::cli {

int DatasetValidate(Context& ctx) {
  const std::string path = ctx.RequireStr("manifest");
  ValidateOptions options;
  if (auto n = ctx.Int("expected-count")) {
    if (*n < 0) throw UsageError("--expected-count must be non-negative");
    options.expected_count = static_cast<size_t>(*n);
  }
  options.clamp = !ctx.Switch("no-clamp");
  const ValidationReport report = ValidateManifestFile(path, options);
  ctx.WriteJson("validation.json", report.ToJson());
  for (const auto& v : report.violations)
    std::cout << path << ":" << v.line << ": " << v.entry_id << " " << v.field_path
              << ": " << v.message << "\n";
  for (const auto& w : report.warnings)
    std::cout << path << ":" << w.line << ": warning: " << w.entry_id << " "
              << w.field_path << ": " << w.message << "\n";
  std::cout << (report.ok() ? "OK" : "INVALID") << ": " << report.violations.size()
            << " violation(s), " << report.warnings.size() << " warning(s)\n";
  return report.ok() ? kExitOk : kExitValidation;
}

int DatasetStatsCmd(Context& ctx) {
  const DatasetStats stats = ComputeDatasetStats(ctx.Manifest());
  const auto j = stats.ToJson();
  ctx.WriteJson("stats.json", j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace forgeline::cli
