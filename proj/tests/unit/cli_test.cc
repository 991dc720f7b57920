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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "forgeline/backend_server.h"
#include "forgeline/backend_suite.h"
#include "forgeline/json_schema.h"
#include "forgeline/manifest.h"
#include "test_util.h"

namespace forgeline {
namespace {

using nlohmann::json;
using testing::Fixture;

struct RunResult {
  int code = -1;
  std::string output;
};

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

RunResult RunCli(const std::vector<std::string>& args, const std::string& env = "") {
  testing::TempDir log_dir("cli_log");
  const std::string log = log_dir / "out.txt";
  std::string cmd = "env -u FORGELINE_BACKENDS " + env + " " + Quote(FORGELINE_CLI_PATH);
  for (const auto& a : args) cmd += " " + Quote(a);
  cmd += " > " + Quote(log) + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing " + path);
  return json::parse(in);
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

void ExpectSchemaValid(const std::string& schema, const json& doc) {
  const auto errors = ValidateJson(ShippedSchema(schema), doc);
  EXPECT_TRUE(errors.empty()) << schema << ": " << errors.front();
}

const std::string kClean = Fixture("clean10/manifest.jsonl");

TEST(CliTest, UsageErrorsExit64) {
  EXPECT_EQ(RunCli({}).code, 64);
  EXPECT_EQ(RunCli({"frobnicate"}).code, 64);
  EXPECT_EQ(RunCli({"dataset", "validate", "--no-such-flag"}).code, 64);
  EXPECT_EQ(RunCli({"dataset", "validate"}).code, 64);  // no manifest
  testing::TempDir out("cli_usage");
  EXPECT_EQ(RunCli({"eval", "seg", "--manifest", kClean, "--out", out.path(), "--aggregation",
                 "median"})
                .code,
            64);
  EXPECT_EQ(RunCli({"--help"}).code, 0);
}

TEST(CliTest, ValidateCleanFixtureWritesReportAndEcho) {
  testing::TempDir out("cli_validate");
  const RunResult r = RunCli({"dataset", "validate", "--manifest", kClean, "--out", out.path()});
  ASSERT_EQ(r.code, 0) << r.output;
  const json report = ReadJson(out / "validation.json");
  ExpectSchemaValid("validation_report", report);
  EXPECT_TRUE(report["violations"].empty());
  const json echo = ReadJson(out / "config_echo.json");
  ExpectSchemaValid("config_echo", echo);
  EXPECT_EQ(echo["command"], "dataset validate");
}

TEST(CliTest, ValidateCorruptFixturesExit1NamingTheViolation) {
  const json expected = ReadJson(Fixture("corrupt/expected.json"));
  for (const auto& [file, message] : expected.items()) {
    testing::TempDir out("cli_corrupt");
    const RunResult r =
        RunCli({"dataset", "validate", "--manifest", Fixture("corrupt/" + file), "--out", out.path()});
    EXPECT_EQ(r.code, 1) << file << "\n" << r.output;
    const json report = ReadJson(out / "validation.json");
    bool named = false;
    for (const auto& v : report["violations"]) named = named || v["message"] == message;
    EXPECT_TRUE(named) << file << ": " << report.dump();
    EXPECT_NE(r.output.find(message.get<std::string>()), std::string::npos) << file;
  }
}

TEST(CliTest, MissingManifestFileIsIoError) {
  testing::TempDir out("cli_io");
  EXPECT_EQ(RunCli({"dataset", "stats", "--manifest", "/nonexistent/m.jsonl", "--out", out.path()})
                .code,
            3);
}

TEST(CliTest, StatsReport) {
  testing::TempDir out("cli_stats");
  ASSERT_EQ(RunCli({"dataset", "stats", "--manifest", Fixture("stats4.jsonl"), "--out", out.path()})
                .code,
            0);
  const json stats = ReadJson(out / "stats.json");
  ExpectSchemaValid("stats_report", stats);
  EXPECT_EQ(stats["total_regions"], 6);
  EXPECT_EQ(stats["images_by_content_type"]["human"], 3);
}

TEST(CliTest, EvalSegWithOracleIsPerfect) {
  testing::TempDir out("cli_seg");
  const RunResult r =
      RunCli({"eval", "seg", "--manifest", kClean, "--out", out.path(), "--backends", "mock"});
  ASSERT_EQ(r.code, 0) << r.output;
  const json report = ReadJson(out / "seg_report.json");
  ExpectSchemaValid("seg_report", report);
  EXPECT_DOUBLE_EQ(report["macro"]["miou"].get<double>(), 100.0);
  EXPECT_DOUBLE_EQ(report["micro"]["f1"].get<double>(), 100.0);
}

TEST(CliTest, EvalSegFromPredictionFile) {
  testing::TempDir out("cli_pred");
  const DatasetManifest m = LoadValidManifest(kClean);
  std::string lines;
  for (const auto& e : m.entries) {
    json j = EntryToJson(e);
    lines += json{{"id", e.id}, {"regions", j["regions"]}}.dump() + "\n";
  }
  WriteText(out / "pred.jsonl", lines);
  RunResult r = RunCli({"eval", "seg", "--manifest", kClean, "--predictions", out / "pred.jsonl",
                     "--out", out.path()});
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_DOUBLE_EQ(ReadJson(out / "seg_report.json")["macro"]["miou"].get<double>(), 100.0);
  WriteText(out / "bad.jsonl", "{\"regions\": []}\n");
  r = RunCli({"eval", "seg", "--manifest", kClean, "--predictions", out / "bad.jsonl", "--out",
           out.path()});
  EXPECT_EQ(r.code, 1);
}

TEST(CliTest, EvalTextDetectGrowth) {
  testing::TempDir out("cli_text");
  WriteText(out / "text.jsonl",
            R"({"id": "a", "candidate": "the cat sat", "reference": "the cat ran"})"
            "\n");
  ASSERT_EQ(RunCli({"eval", "text", "--input", out / "text.jsonl", "--out", out.path()}).code, 0);
  const json text = ReadJson(out / "text_report.json");
  ExpectSchemaValid("text_report", text);
  EXPECT_NEAR(text["mean"]["rouge_l"].get<double>(), 66.67, 0.01);

  WriteText(out / "det.jsonl",
            R"({"id": "a", "fake_prob": 0.9, "label": "fake", "group": "human"})"
            "\n"
            R"({"id": "b", "fake_prob": 0.7, "label": "real", "group": "human"})"
            "\n");
  ASSERT_EQ(RunCli({"eval", "detect", "--input", out / "det.jsonl", "--out", out.path(),
                 "--threshold", "0.8"})
                .code,
            0);
  const json det = ReadJson(out / "detection_report.json");
  ExpectSchemaValid("detection_report", det);
  EXPECT_DOUBLE_EQ(det["overall"]["accuracy"].get<double>(), 100.0);

  WriteText(out / "growth.jsonl", "{\"pre\": 29.57, \"post\": 30.20}\n");
  ASSERT_EQ(RunCli({"eval", "growth", "--input", out / "growth.jsonl", "--out", out.path()}).code, 0);
  const json growth = ReadJson(out / "growth_report.json");
  ExpectSchemaValid("growth_report", growth);
  EXPECT_NEAR(growth["growth_ratio_of_means"].get<double>(), 2.13, 0.005);
}

TEST(CliTest, RefinePipelinesProduceSchemaValidRunLogs) {
  testing::TempDir out("cli_refine");
  RunResult r = RunCli({"refine", "inpaint", "--manifest", kClean, "--out", out.path()});
  ASSERT_EQ(r.code, 0) << r.output;
  r = RunCli({"refine", "regen", "--manifest", kClean, "--out", out.path()});
  ASSERT_EQ(r.code, 0) << r.output;
  const DatasetManifest m = LoadValidManifest(kClean);
  for (const auto& e : m.entries) {
    ExpectSchemaValid("inpaint_run_log", ReadJson(out / ("inpaint/" + e.id + "/run_log.json")));
    ExpectSchemaValid("regen_run_log", ReadJson(out / ("regen/" + e.id + "/run_log.json")));
  }
}

TEST(CliTest, ConfigFileIsOverriddenByFlags) {
  testing::TempDir out("cli_config");
  WriteText(out / "cfg.json", R"({"seed": 5, "iters": 1, "mode": "sequential"})");
  ASSERT_EQ(RunCli({"refine", "inpaint", "--manifest", kClean, "--id", "fx00", "--config",
                 out / "cfg.json", "--out", out.path()})
                .code,
            0);
  json echo = ReadJson(out / "config_echo.json");
  EXPECT_EQ(echo["options"]["seed"], 5);
  EXPECT_EQ(echo["options"]["mode"], "sequential");
  json log = ReadJson(out / "inpaint/fx00/run_log.json");
  EXPECT_EQ(log["config"]["max_iters"], 1);

  ASSERT_EQ(RunCli({"refine", "inpaint", "--manifest", kClean, "--id", "fx00", "--config",
                 out / "cfg.json", "--seed", "7", "--iters", "2", "--out", out.path()})
                .code,
            0);
  echo = ReadJson(out / "config_echo.json");
  EXPECT_EQ(echo["options"]["seed"], 7);
  log = ReadJson(out / "inpaint/fx00/run_log.json");
  EXPECT_EQ(log["config"]["max_iters"], 2);

  WriteText(out / "bad.json", "[1, 2]");
  EXPECT_EQ(RunCli({"dataset", "stats", "--manifest", kClean, "--config", out / "bad.json", "--out",
                 out.path()})
                .code,
            64);
}

TEST(CliTest, UnreachableBackendExits2AndEnvIsHonoured) {
  testing::TempDir out("cli_backend");
  WriteText(out / "dead.json", R"({"endpoints": {"analyzer": {"url": "http://127.0.0.1:9",
            "attempts": 1, "timeout_ms": 500}}})");
  RunResult r = RunCli({"eval", "seg", "--manifest", kClean, "--out", out.path()},
                    "FORGELINE_BACKENDS=" + Quote(out / "dead.json"));
  EXPECT_EQ(r.code, 2) << r.output;
  // An explicit flag beats the environment.
  r = RunCli({"eval", "seg", "--manifest", kClean, "--out", out.path(), "--backends", "mock"},
          "FORGELINE_BACKENDS=" + Quote(out / "dead.json"));
  EXPECT_EQ(r.code, 0) << r.output;
  r = RunCli({"backends", "ping", "--backends", out / "dead.json", "--out", out.path()});
  EXPECT_EQ(r.code, 2) << r.output;
  // A required role absent from the config is a usage problem.
  r = RunCli({"refine", "inpaint", "--manifest", kClean, "--id", "fx00", "--backends",
              out / "dead.json", "--out", out.path()});
  EXPECT_EQ(r.code, 64) << r.output;
  // A backend failing mid-pipeline aborts the run, logs it, and exits 2.
  WriteText(out / "half.json", R"({"endpoints": {"analyzer": {"url": "http://127.0.0.1:9",
            "attempts": 1, "timeout_ms": 500}, "inpainter": "mock", "scorer": "mock"}})");
  r = RunCli({"refine", "inpaint", "--manifest", kClean, "--id", "fx00", "--backends",
              out / "half.json", "--out", out.path()});
  EXPECT_EQ(r.code, 2) << r.output;
  const json log = ReadJson(out / "inpaint/fx00/run_log.json");
  EXPECT_EQ(log["status"], "aborted");
  EXPECT_EQ(log["error_kind"], "transport");
  ExpectSchemaValid("inpaint_run_log", log);
}

TEST(CliTest, PingLiveServer) {
  const DatasetManifest m = LoadValidManifest(kClean);
  BackendServer server(BuildMockSuite(m, {}));
  server.Start();
  testing::TempDir out("cli_ping");
  WriteText(out / "live.json",
            json{{"endpoints", {{"embedder", server.url()}, {"analyzer", server.url()}}}}.dump());
  const RunResult r =
      RunCli({"backends", "ping", "--backends", out / "live.json", "--out", out.path()});
  EXPECT_EQ(r.code, 0) << r.output;
  const json ping = ReadJson(out / "backends_ping.json");
  EXPECT_TRUE(ping["roles"]["embedder"]["passed"].get<bool>());
}

TEST(CliTest, RobustnessAndCuration) {
  testing::TempDir out("cli_misc");
  RunResult r = RunCli({"robustness", "--manifest", kClean, "--out", out.path()});
  ASSERT_EQ(r.code, 0) << r.output;
  const json rob = ReadJson(out / "robustness_report.json");
  ExpectSchemaValid("robustness_report", rob);
  EXPECT_EQ(rob["rows"].size(), 10u);

  r = RunCli({"robustness", "--manifest", kClean, "--out", out.path(), "--grid", "none,blur:5"});
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(ReadJson(out / "robustness_report.json")["rows"].size(), 2u);

  ASSERT_EQ(RunCli({"curate", "cluster", "--manifest", kClean, "--k", "3", "--out", out.path()}).code,
            0);
  ExpectSchemaValid("cluster_report", ReadJson(out / "clusters.json"));
  ASSERT_EQ(RunCli({"curate", "sample", "--clusters", out / "clusters.json", "--n-per-cluster", "1",
                 "--manifest", kClean, "--out", out.path()})
                .code,
            0);
  const json sample = ReadJson(out / "sample.json");
  ExpectSchemaValid("sample_report", sample);
  EXPECT_EQ(sample["selected"].size(), 3u);
  ASSERT_EQ(RunCli({"curate", "filter", "--manifest", kClean, "--out", out.path()}).code, 0);
  const json cur = ReadJson(out / "curation_report.json");
  ExpectSchemaValid("curation_report", cur);
  EXPECT_EQ(LoadManifest(out / "kept_manifest.jsonl").manifest.entries.size(), 10u);
}

}  // namespace
}  // namespace forgeline
