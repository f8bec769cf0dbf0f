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

#ifndef INFLUENCER_SYNTH_HPP_
#define INFLUENCER_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/analysis.hpp"
#include "influencer/corpus.hpp"
#include "influencer/topics.hpp"

namespace influencer::synth {

/// Planted-topic tweet corpus with a known generating model.
///
/// The 25 terms form a 5 x 5 grid. Topic k < 5 is uniform over row k, topic
/// 5 + j over column j ("bar" topics). Each tweet draws a topic mixture from
/// a Dirichlet whose concentration favours topic 1 for the most followed
/// users, topic 0 for everyone else, and topic 0 more strongly on days when
/// the synthetic price is high. Comment and retweet targets are picked with
/// Zipf weights over users, so authority ends up heavy tailed.
struct SynthOptions {
  std::size_t docs = 1000;
  std::size_t doc_length = 50;
  std::size_t topics = 5;
  std::uint64_t seed = 7;
  /// 0 picks max(10, docs / 8).
  std::size_t users = 0;
  Day start = Day{std::chrono::year{2017} / 6 / 1};
  int days = 760;

  void validate() const;
};

struct SyntheticDataset {
  std::vector<corpus::RawTweet> tweets;
  analysis::PriceSeries prices;
  /// Grid order: row-major over the 5 x 5 layout.
  std::vector<std::string> terms;
  /// topics x terms, columns in `terms` order.
  topics::Matrix phi;
  /// tweets x topics; a retweet repeats its parent's row.
  topics::Matrix theta;
};

/// The 25 grid terms, row-major.
const std::vector<std::string>& grid_terms();

SyntheticDataset make_synthetic(const SynthOptions& options);

/// Writes tweets.jsonl, prices.csv, ground_truth.json and a ready-to-run
/// config.toml into `dir` (created if needed).
void write_dataset(const SyntheticDataset& data, const SynthOptions& options, const std::filesystem::path& dir);

nlohmann::json ground_truth_json(const SyntheticDataset& data, const SynthOptions& options);

/// For each planted topic, the best cosine against any trained topic after
/// aligning columns by term. Planted terms missing from the model's
/// vocabulary count as zero probability.
std::vector<double> topic_recovery(const topics::TopicModel& model, const topics::Matrix& planted_phi,
                                   const std::vector<std::string>& planted_terms);

}  // namespace influencer::synth

#endif  // INFLUENCER_SYNTH_HPP_
