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

#ifndef INFLUENCER_PIPELINE_HPP_
#define INFLUENCER_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/analysis.hpp"
#include "influencer/corpus.hpp"
#include "influencer/graph.hpp"
#include "influencer/topics.hpp"

namespace influencer::pipeline {

/// A word tracked in word_frequencies.csv, written "category:word" in config.
struct FrequencyWord {
  std::string category;
  std::string word;
  bool operator==(const FrequencyWord&) const = default;
};

std::vector<FrequencyWord> default_frequency_words();
std::vector<analysis::DayWindow> default_windows();

/// Everything a run depends on. Loaded from a flat key = value file:
///
///   tweets = "tweets.jsonl"        # required for ingest
///   tweets_format = "jsonl"        # jsonl | json | csv, default from extension
///   prices = "prices.csv"          # required when correlate = true
///   stopwords = "stop.txt"         # default: bundled list
///   custom_stopwords = ["btc"]
///   date_start = "2016-01-01"      # inclusive, optional
///   date_end = "2019-03-29"        # inclusive, optional
///   out = "out"
///   seed = 42                      # required
///   hits_max_iter = 200
///   hits_tol = 1e-8
///   threshold = 0.8
///   lda_k = 4
///   lda_alpha = 0.25               # default 1 / lda_k
///   lda_beta = 0.01
///   lda_iterations = 1000
///   lda_burn_in = 500
///   top_words = 20
///   correlate = true
///   window_days = 60
///   windows = ["2017-12-01:2018-04-30"]
///   frequency_words = ["market:price", "technical:node"]
///
/// Relative paths resolve against the config file's directory.
struct PipelineConfig {
  std::filesystem::path tweets;
  std::optional<corpus::InputFormat> tweets_format;
  std::filesystem::path prices;
  std::filesystem::path stopwords;
  std::vector<std::string> custom_stopwords;
  std::optional<Day> date_start;
  std::optional<Day> date_end;
  std::filesystem::path out = "out";
  std::optional<std::uint64_t> seed;
  graph::HitsOptions hits;
  double threshold = 0.8;
  int lda_k = 4;
  std::optional<double> lda_alpha;
  double lda_beta = 0.01;
  int lda_iterations = 1000;
  int lda_burn_in = 500;
  int top_words = 20;
  bool correlate = true;
  int window_days = 60;
  std::vector<analysis::DayWindow> windows = default_windows();
  std::vector<FrequencyWord> frequency_words = default_frequency_words();

  /// UserError on syntax errors, unknown keys or wrongly typed values.
  static PipelineConfig parse(std::string_view text, const std::filesystem::path& base_dir = {});
  static PipelineConfig load(const std::filesystem::path& file);

  std::string to_toml() const;
  nlohmann::json to_json() const;
  static PipelineConfig from_json(const nlohmann::json& j);

  /// Range checks plus the seed requirement; UserError on failure.
  void validate() const;
  topics::LdaConfig lda_config() const;
  corpus::StopwordList stopword_list() const;

  bool operator==(const PipelineConfig&) const = default;
};

enum class Stage { kIngest, kGraph, kHits, kPartition, kLda, kSimilarity, kFrequencies, kCorrelate, kExportGexf };

inline constexpr Stage kAllStages[] = {Stage::kIngest,     Stage::kGraph,       Stage::kHits,
                                       Stage::kPartition,  Stage::kLda,         Stage::kSimilarity,
                                       Stage::kFrequencies, Stage::kCorrelate,  Stage::kExportGexf};

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

/// Files a stage writes, relative to the output directory.
std::vector<std::string> stage_outputs(Stage stage, const PipelineConfig& config);

/// Runs one stage against the artifacts already in config.out, then rewrites
/// manifest.json. Input files the stage needs must exist (UserError
/// otherwise). A failing stage leaves its partial outputs, marks the manifest
/// incomplete and rethrows with the stage name prefixed; UserError stays a
/// UserError.
void run_stage(const PipelineConfig& config, Stage stage);

/// Validates the config, then runs every stage in order.
void run_pipeline(const PipelineConfig& config);

/// {schema_version, complete, failed_stage, config, files: [{path, bytes,
/// sha256}]} over every file under `out` except the manifest itself, sorted
/// by path. complete is true when no stage failed and every expected
/// output exists.
nlohmann::json build_manifest(const PipelineConfig& config, std::optional<Stage> failed_stage);
void write_manifest(const PipelineConfig& config, std::optional<Stage> failed_stage);

std::string sha256_hex(const std::filesystem::path& file);

}  // namespace influencer::pipeline

#endif  // INFLUENCER_PIPELINE_HPP_
