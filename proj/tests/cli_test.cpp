// Copyright 2026 The influencer-topics Authors
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

// Runs the command-line binary as a child process.

#include <cstdlib>
#include <filesystem>
#include <string>

#include <fmt/format.h>
#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "support/test_support.hpp"

namespace {

namespace fs = std::filesystem;
using influencer::testing::read_file;
using influencer::testing::TempDir;
using influencer::testing::write_file;
using ::testing::HasSubstr;

struct Result {
  int code = -1;
  std::string output;
};

Result run(const TempDir& dir, const std::string& args) {
  const auto log = dir.path() / "cli.log";
  const auto cmd = fmt::format("INFLUENCER_TOPICS_LOG=info '{}' {} > '{}' 2>&1", INFLUENCER_TOPICS_BIN, args, log.string());
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = read_file(log);
  return r;
}

TEST(CliTest, HelpExitsZero) {
  TempDir dir;
  const auto r = run(dir, "--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_THAT(r.output, HasSubstr("synth"));
  EXPECT_THAT(r.output, HasSubstr("export-gexf"));
}

TEST(CliTest, BadUsageExitsTwo) {
  TempDir dir;
  EXPECT_EQ(run(dir, "").code, 2);
  EXPECT_EQ(run(dir, "frobnicate").code, 2);
  EXPECT_EQ(run(dir, "run").code, 2);
  EXPECT_EQ(run(dir, fmt::format("run --config '{}'", (dir.path() / "missing.toml").string())).code, 2);
}

TEST(CliTest, SynthTwiceGivesIdenticalFiles) {
  TempDir dir;
  ASSERT_EQ(run(dir, fmt::format("synth --docs 200 --seed 7 --out '{}'", (dir.path() / "a").string())).code, 0);
  ASSERT_EQ(run(dir, fmt::format("synth --docs 200 --seed 7 --out '{}'", (dir.path() / "b").string())).code, 0);
  for (const char* f : {"tweets.jsonl", "prices.csv", "ground_truth.json", "config.toml"}) {
    EXPECT_EQ(read_file(dir.path() / "a" / f), read_file(dir.path() / "b" / f)) << f;
  }
}

TEST(CliTest, BundledDatasetMatchesAFreshSynth) {
  TempDir dir;
  const auto bundled = fs::path(INFLUENCER_SOURCE_DIR) / "data" / "synthetic";
  ASSERT_EQ(run(dir, fmt::format("synth --docs 1000 --seed 7 --out '{}'", (dir.path() / "fresh").string())).code, 0);
  for (const char* f : {"tweets.jsonl", "prices.csv", "ground_truth.json", "config.toml"}) {
    EXPECT_EQ(read_file(bundled / f), read_file(dir.path() / "fresh" / f)) << f;
  }
}

TEST(CliTest, RunAndStagesWithFlagOverrides) {
  TempDir dir;
  const auto data = dir.path() / "data";
  ASSERT_EQ(run(dir, fmt::format("synth --docs 200 --doc-length 15 --out '{}'", data.string())).code, 0);
  write_file(data / "fast.toml",
             "tweets = \"tweets.jsonl\"\nprices = \"prices.csv\"\nseed = 1\nlda_iterations = 30\nlda_burn_in = 10\n");
  const auto config = (data / "fast.toml").string();
  const auto out = dir.path() / "out";
  const auto r = run(dir, fmt::format("run --config '{}' --out '{}' --seed 5 --k 3 --threshold 0.7 --max-iter 300 "
                                      "--window-days 14 --format jsonl",
                                      config, out.string()));
  ASSERT_EQ(r.code, 0) << r.output;
  const auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
  EXPECT_TRUE(manifest["complete"].get<bool>());
  EXPECT_EQ(manifest["config"]["seed"], 5);
  EXPECT_EQ(manifest["config"]["lda_k"], 3);
  EXPECT_EQ(manifest["config"]["threshold"], 0.7);
  EXPECT_EQ(manifest["config"]["hits_max_iter"], 300);
  EXPECT_EQ(manifest["config"]["window_days"], 14);

  const auto staged = dir.path() / "staged";
  for (const char* stage : {"ingest", "graph", "hits", "partition", "lda", "similarity", "frequencies", "correlate",
                            "export-gexf"}) {
    const auto s = run(dir, fmt::format("{} --config '{}' --out '{}' --seed 5 --k 3 --threshold 0.7 --max-iter 300 "
                                        "--window-days 14",
                                        stage, config, staged.string()));
    ASSERT_EQ(s.code, 0) << stage << ": " << s.output;
  }
  EXPECT_EQ(nlohmann::json::parse(read_file(staged / "manifest.json"))["files"], manifest["files"]);
}

TEST(CliTest, MissingPricesExitTwoAndNameThePath) {
  TempDir dir;
  const auto data = dir.path() / "data";
  ASSERT_EQ(run(dir, fmt::format("synth --docs 100 --out '{}'", data.string())).code, 0);
  fs::remove(data / "prices.csv");
  const auto r = run(dir, fmt::format("run --config '{}'", (data / "config.toml").string()));
  EXPECT_EQ(r.code, 2);
  EXPECT_THAT(r.output, HasSubstr((data / "prices.csv").string()));
}

TEST(CliTest, StageWithoutItsInputsExitsTwo) {
  TempDir dir;
  const auto data = dir.path() / "data";
  ASSERT_EQ(run(dir, fmt::format("synth --docs 100 --out '{}'", data.string())).code, 0);
  const auto r = run(dir, fmt::format("lda --config '{}'", (data / "config.toml").string()));
  EXPECT_EQ(r.code, 2);
  EXPECT_THAT(r.output, HasSubstr("stage"));
  EXPECT_THAT(r.output, HasSubstr("lda"));
}

TEST(CliTest, SeedIsMandatory) {
  TempDir dir;
  write_file(dir.path() / "c.toml", "tweets = \"t.jsonl\"\n");
  write_file(dir.path() / "t.jsonl", "");
  const auto r = run(dir, fmt::format("ingest --config '{}'", (dir.path() / "c.toml").string()));
  EXPECT_EQ(r.code, 2);
  EXPECT_THAT(r.output, HasSubstr("seed"));
}

}  // namespace
