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
#include <map>
#include <memory>

#include "cli.h"
#include "forgeline/error.h"

namespace forgeline::cli {

const std::vector<Command>& Commands() {
  static const std::vector<Command> commands = {
      {"dataset validate", "Check a JSONL manifest against every schema invariant",
       {"expected-count"}, {"no-clamp"}, DatasetValidate},
      {"dataset stats", "Per-content-type and per-artifact-type counts", {}, {},
       DatasetStatsCmd},
      {"eval seg", "mIoU and F1 of predicted masks against ground truth",
       {"predictions", "aggregation"}, {}, EvalSeg},
      {"eval text", "ROUGE-L and CSS of explanations", {"input"},
       {"align", "no-css"}, EvalText},
      {"eval detect", "Real/fake detection accuracy per group", {"input"}, {},
       EvalDetect},
      {"eval growth", "Score growth rate before and after refinement", {"input"},
       {}, EvalGrowth},
      {"refine regen", "Iterative regeneration with a memory bank",
       {"prompt", "id"}, {"no-early-stop"}, RefineRegen},
      {"refine inpaint", "Region-wise iterative inpainting", {"id"},
       {"no-early-stop", "keep-region-images"}, RefineInpaint},
      {"robustness", "Localization scores under the perturbation grid",
       {"aggregation"}, {}, Robustness},
      {"curate cluster", "k-means over image embeddings", {"k"}, {}, CurateCluster},
      {"curate sample", "Uniform per-cluster sampling", {"clusters", "n-per-cluster"},
       {}, CurateSample},
      {"curate filter", "Judge filtering with the packaged curation prompt",
       {"prompt-file"}, {}, CurateFilter},
      {"backends ping", "Health and conformance checks for configured endpoints",
       {"role"}, {}, BackendsPing},
      {"backends serve", "Serve the mock suite over HTTP until interrupted",
       {"port"}, {}, BackendsServe},
  };
  return commands;
}

namespace {

constexpr const char* kCommonOptions[][2] = {
    {"config", "JSON config file; flags override its keys"},
    {"manifest", "JSONL dataset manifest"},
    {"out", "Output directory (default forgeline_out)"},
    {"backends", "Backend config JSON, or \"mock\""},
    {"seed", "Seed for every stochastic step"},
    {"iters", "Iteration budget"},
    {"mode", "Inpainting mode: paper_faithful or sequential"},
    {"grid", "Perturbation specs, e.g. none,jpeg:50,noise:0.1,blur:5"},
    {"threshold", "Fake decision threshold"},
    {"parallel", "Concurrent backend calls"},
};

int Run(int argc, char** argv) {
  CLI::App app{"forgeline: artifact localization evaluation and refinement pipelines"};
  app.require_subcommand(1);
  std::map<std::string, CLI::App*> groups;
  std::map<std::string, RawFlags> flags;
  std::map<std::string, CLI::App*> leaves;

  for (const auto& cmd : Commands()) {
    const auto space = cmd.path.find(' ');
    CLI::App* parent = &app;
    std::string leaf_name = cmd.path;
    if (space != std::string::npos) {
      const std::string group = cmd.path.substr(0, space);
      leaf_name = cmd.path.substr(space + 1);
      auto& g = groups[group];
      if (!g) {
        g = app.add_subcommand(group, group + " commands");
        g->require_subcommand(1);
      }
      parent = g;
    }
    CLI::App* leaf = parent->add_subcommand(leaf_name, cmd.description);
    RawFlags& raw = flags[cmd.path];
    for (const auto& opt : kCommonOptions)
      leaf->add_option(std::string("--") + opt[0], raw.values[opt[0]], opt[1]);
    for (const auto& name : cmd.options)
      leaf->add_option("--" + name, raw.values[name]);
    for (const auto& name : cmd.switches)
      leaf->add_flag("--" + name, raw.switches[name]);
    leaves[cmd.path] = leaf;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Command* selected = nullptr;
  for (const auto& cmd : Commands())
    if (leaves[cmd.path]->parsed()) selected = &cmd;
  if (!selected) {
    std::cerr << app.help();
    return kExitUsage;
  }

  std::unique_ptr<Context> ctx;
  int code = kExitOk;
  try {
    ctx = std::make_unique<Context>(selected->path,
                                    std::vector<std::string>(argv, argv + argc),
                                    flags[selected->path]);
    code = selected->handler(*ctx);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    code = kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    code = kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    code = kExitValidation;
  } catch (const CodecError& e) {
    std::cerr << "invalid data: " << e.what() << "\n";
    code = kExitValidation;
  } catch (const DimensionError& e) {
    std::cerr << "invalid data: " << e.what() << "\n";
    code = kExitValidation;
  } catch (const TransportError& e) {
    std::cerr << "backend failure: " << e.what() << "\n";
    code = kExitBackend;
  } catch (const ProtocolError& e) {
    std::cerr << "backend failure: " << e.what() << "\n";
    code = kExitBackend;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    code = kExitIo;
  }
  if (ctx) {
    try {
      ctx->WriteEcho();
    } catch (const std::exception& e) {
      std::cerr << "could not write config echo: " << e.what() << "\n";
      if (code == kExitOk) code = kExitIo;
    }
  }
  return code;
}

}  // namespace
}  // namespace forgeline::cli

int main(int argc, char** argv) {
  try {
    return forgeline::cli::Run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
