// Copyright 2026 The hc3detect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the hc3detect binary end to end.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hc3detect/corpus.h"
#include "hc3detect/logistic_regression.h"
#include "json.hpp"
#include "testing/test_util.h"

namespace hc3detect {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

RunResult RunCli(const std::vector<std::string>& args,
              const std::string& env = "") {
  std::string command = env + " " + Quote(HC3DETECT_CLI_PATH);
  for (const auto& a : args) command += " " + Quote(a);
  command += " 2>&1";
  RunResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, n);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string Slurp(const fs::path& path) { return *ReadFile(path); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::MakeTempDir("cli");
    Rng rng(99);
    auto records = testing::RandomRecords(rng, 40, {"open_qa", "finance"});
    records[0].chatgpt_answers[0] = "I'm sorry to hear that. " +
                                    records[0].chatgpt_answers[0];
    corpus_ = dir_ / "corpus.jsonl";
    ASSERT_TRUE(WriteFile(corpus_, SerializeRecords(records)).ok());
  }

  // ingest -> build -> lm train -> featurize, returning the feature path.
  void Pipeline() {
    ASSERT_EQ(RunCli({"ingest", "--input", corpus_, "--output", P("samples.jsonl")})
                  .exit_code,
              0);
    auto build = RunCli({"build", "--samples", P("samples.jsonl"), "--out-dir",
                      P("bundles"), "--seed", "7"});
    ASSERT_EQ(build.exit_code, 0) << build.output;
    auto lm = RunCli({"lm", "train", "--input", P("bundles/raw-full/train.jsonl"),
                   "--output", P("model.lm")});
    ASSERT_EQ(lm.exit_code, 0) << lm.output;
    for (const char* split : {"train", "test"}) {
      auto f = RunCli({"featurize", "--samples",
                    P(std::string("bundles/raw-full/") + split + ".jsonl"),
                    "--output", P(std::string(split) + ".features.jsonl"),
                    "--lm-model", P("model.lm")});
      ASSERT_EQ(f.exit_code, 0) << f.output;
    }
  }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  fs::path corpus_;
};

TEST_F(CliTest, IngestSummary) {
  const fs::path one = dir_ / "one.jsonl";
  ASSERT_TRUE(WriteFile(one,
                        R"({"question":"Q1","human_answers":["A1","A2"],)"
                        R"("chatgpt_answers":["B1"]})"
                        "\n")
                  .ok());
  auto r = RunCli({"ingest", "--input", one.string(), "--output", P("one_out.jsonl")});
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_THAT(r.output, HasSubstr("records=1 samples=3"));
  EXPECT_THAT(r.output, HasSubstr("human=2 chatgpt=1"));
  auto samples = ReadSamples(P("one_out.jsonl"));
  ASSERT_TRUE(samples.ok());
  EXPECT_EQ(samples->size(), 3u);
  EXPECT_TRUE(fs::exists(P("one_out.jsonl.manifest.json")));
}

TEST_F(CliTest, MissingInputIsADataError) {
  auto r = RunCli({"ingest", "--input", P("absent.jsonl"), "--output", P("x")});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_THAT(r.output, HasSubstr("no such input"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({"frobnicate"}).exit_code, 1);
  EXPECT_EQ(RunCli({"ingest", "--input", corpus_}).exit_code, 1);
  EXPECT_EQ(RunCli({"build", "--samples", "x", "--out-dir", "y", "--case", "odd"})
                .exit_code,
            1);
  EXPECT_EQ(RunCli({"--help"}).exit_code, 0);
}

TEST_F(CliTest, BuildWritesSixVersionsDeterministically) {
  ASSERT_EQ(RunCli({"ingest", "--input", corpus_, "--output", P("samples.jsonl")})
                .exit_code,
            0);
  for (const char* out : {"a", "b"}) {
    auto r = RunCli({"build", "--samples", P("samples.jsonl"), "--out-dir", P(out),
                  "--seed", "11"});
    ASSERT_EQ(r.exit_code, 0) << r.output;
  }
  int versions = 0;
  for (const auto& entry : fs::directory_iterator(P("a"))) {
    if (!entry.is_directory()) continue;
    ++versions;
    const auto name = entry.path().filename();
    for (const char* file : {"train.jsonl", "test.jsonl"}) {
      EXPECT_EQ(Slurp(entry.path() / file), Slurp(fs::path(P("b")) / name / file))
          << name;
    }
  }
  EXPECT_EQ(versions, 6);

  const auto manifest = nlohmann::json::parse(Slurp(P("a/manifest.json")));
  EXPECT_EQ(manifest["format"], "hc3detect-manifest");
  EXPECT_EQ(manifest["command"], "build");
  const auto& v = manifest["details"]["versions"];
  for (const char* f : {"raw", "filtered"}) {
    for (const char* part : {"train", "test"}) {
      EXPECT_EQ(v[std::string(f) + "-mix"][part].get<int>(),
                v[std::string(f) + "-full"][part].get<int>() +
                    v[std::string(f) + "-sent"][part].get<int>());
    }
  }

  // Same output directory twice gives an identical manifest.
  const std::string before = Slurp(P("a/manifest.json"));
  ASSERT_EQ(RunCli({"build", "--samples", P("samples.jsonl"), "--out-dir", P("a"),
                 "--seed", "11"})
                .exit_code,
            0);
  EXPECT_EQ(Slurp(P("a/manifest.json")), before);

  auto replay = RunCli({"replay", "--manifest", P("a/manifest.json")});
  EXPECT_EQ(replay.exit_code, 0) << replay.output;
  EXPECT_THAT(replay.output, HasSubstr("replay: outputs identical"));
}

TEST_F(CliTest, ReplayDetectsTampering) {
  ASSERT_EQ(RunCli({"ingest", "--input", corpus_, "--output", P("samples.jsonl")})
                .exit_code,
            0);
  ASSERT_EQ(RunCli({"build", "--samples", P("samples.jsonl"), "--out-dir", P("b")})
                .exit_code,
            0);
  // Change the input after the fact; the replayed outputs must differ.
  std::string samples = Slurp(P("samples.jsonl"));
  const auto pos = samples.find("\"text\":\"") + 8;
  samples.insert(pos, "Changed ");
  ASSERT_TRUE(WriteFile(P("samples.jsonl"), samples).ok());
  auto replay = RunCli({"replay", "--manifest", P("b/manifest.json")});
  EXPECT_EQ(replay.exit_code, 2) << replay.output;
}

TEST_F(CliTest, TrainPredictDetectAgree) {
  Pipeline();
  auto train = RunCli({"train", "--features", P("train.features.jsonl"), "--output",
                    P("clf.json"), "--lambda", "0.01"});
  ASSERT_EQ(train.exit_code, 0) << train.output;
  auto predict = RunCli({"predict", "--model", P("clf.json"), "--features",
                      P("test.features.jsonl"), "--output", P("pred.jsonl")});
  ASSERT_EQ(predict.exit_code, 0) << predict.output;
  EXPECT_THAT(predict.output, HasSubstr("macro="));

  auto detect = RunCli({"detect", "--model", P("clf.json"), "--input",
                     P("bundles/raw-full/test.jsonl"), "--input-format",
                     "samples", "--lm-model", P("model.lm")});
  ASSERT_EQ(detect.exit_code, 0) << detect.output;

  std::map<std::string, double> from_predict;
  {
    std::istringstream in(Slurp(P("pred.jsonl")));
    for (std::string line; std::getline(in, line);) {
      auto v = nlohmann::json::parse(line);
      from_predict[v["sample_id"]] = v["probability"].get<double>();
    }
  }
  std::istringstream in(detect.output);
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    const std::string id = line.substr(0, tab);
    const double p = std::stod(line.substr(tab + 1));
    ASSERT_TRUE(from_predict.contains(id)) << id;
    EXPECT_NEAR(p, from_predict[id], 5e-7) << id;
    ++lines;
  }
  EXPECT_EQ(lines, static_cast<int>(from_predict.size()));
}

TEST_F(CliTest, DetectWithZeroWeightModel) {
  Pipeline();
  LogRegModel model;
  model.weights.assign(5, 0.0);
  model.standardizer = {std::vector<double>(5, 0.0),
                        std::vector<double>(5, 1.0)};
  ASSERT_TRUE(model.Save(P("zero.json")).ok());
  auto r = RunCli({"detect", "--model", P("zero.json"), "--text",
                "The bank is open today.", "--lm-model", P("model.lm")});
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(r.output, "text:1\t0.500000\t1\n");

  auto qa = RunCli({"detect", "--model", P("zero.json"), "--text", "x", "--qa",
                 "--lm-model", P("model.lm")});
  EXPECT_EQ(qa.exit_code, 1) << qa.output;

  auto mismatch = RunCli({"detect", "--model", P("zero.json"), "--text", "x",
                       "--no-length", "--lm-model", P("model.lm")});
  EXPECT_EQ(mismatch.exit_code, 2);
  EXPECT_THAT(mismatch.output, HasSubstr("config mismatch"));
}

TEST_F(CliTest, BackendErrors) {
  Pipeline();
  LogRegModel model;
  model.weights.assign(5, 0.0);
  model.standardizer = {std::vector<double>(5, 0.0),
                        std::vector<double>(5, 1.0)};
  ASSERT_TRUE(model.Save(P("zero.json")).ok());
  auto refused = RunCli({"detect", "--model", P("zero.json"), "--text", "x",
                      "--lm-backend", "bridge", "--bridge", "127.0.0.1:1"});
  EXPECT_EQ(refused.exit_code, 3) << refused.output;

  auto via_env = RunCli({"detect", "--model", P("zero.json"), "--text", "ab cd",
                      "--lm-backend", "bridge", "--bridge", "127.0.0.1:1"},
                     "HC3DETECT_BRIDGE=" +
                         Quote(std::string("exec:") + HC3DETECT_FAKE_BRIDGE_PATH));
  EXPECT_EQ(via_env.exit_code, 0) << via_env.output;

  auto both = RunCli({"detect", "--model", P("zero.json"), "--text", "x",
                   "--lm-model", P("model.lm"), "--bridge", "127.0.0.1:1"});
  EXPECT_EQ(both.exit_code, 1) << both.output;
}

TEST_F(CliTest, GridEvalAndStats) {
  Pipeline();
  auto grid = RunCli({"grid", "--features", P("train.features.jsonl"), "--output",
                   P("grid.json"), "--model-output", P("grid_model.json"),
                   "--lambdas", "0.001,0.1", "--folds", "3"});
  ASSERT_EQ(grid.exit_code, 0) << grid.output;
  EXPECT_THAT(grid.output, HasSubstr("chosen_lambda="));

  auto sources = RunCli({"eval", "sources", "--model", P("grid_model.json"),
                      "--features", P("test.features.jsonl"), "--out-dir",
                      P("sources")});
  ASSERT_EQ(sources.exit_code, 0) << sources.output;
  EXPECT_TRUE(fs::exists(P("sources/sources.csv")));

  auto matrix = RunCli({"eval", "matrix", "--bundles", P("bundles"), "--out-dir",
                     P("matrix"), "--lm-model", P("model.lm"), "--versions",
                     "raw-full,raw-sent", "--lambdas", "0.01", "--folds", "3"});
  ASSERT_EQ(matrix.exit_code, 0) << matrix.output;
  for (const char* f : {"matrix.json", "matrix.md", "matrix.csv",
                        "models/raw-full.json"}) {
    EXPECT_TRUE(fs::exists(fs::path(P("matrix")) / f)) << f;
  }

  auto vocab = RunCli({"stats", "vocab", "--corpus", corpus_, "--out-dir",
                    P("vocab"), "--role", "both"});
  ASSERT_EQ(vocab.exit_code, 0) << vocab.output;
  const auto rows = nlohmann::json::parse(Slurp(P("vocab/vocab.json")));
  ASSERT_TRUE(rows.is_array());
  for (const auto& row : rows) {
    const double d = row["D"];
    const double expected =
        100.0 * row["V"].get<double>() /
        (row["L"].get<double>() * row["N"].get<double>());
    EXPECT_NEAR(d, expected, 1e-9);
  }

  auto ppl = RunCli({"stats", "ppl", "--samples", P("bundles/raw-full/test.jsonl"),
                  "--out-dir", P("ppl"), "--lm-model", P("model.lm")});
  ASSERT_EQ(ppl.exit_code, 0) << ppl.output;
  EXPECT_TRUE(fs::exists(P("ppl/ppl_summary.json")));
}

}  // namespace
}  // namespace hc3detect
