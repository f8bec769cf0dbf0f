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

#ifndef INFLUENCER_TOPICS_HPP_
#define INFLUENCER_TOPICS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/corpus.hpp"

namespace influencer::topics {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct LdaConfig {
  int topics = 4;
  double alpha = 0.25;
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 500;
  std::uint64_t seed = 0;

  /// Defaults with alpha = 1 / topics.
  static LdaConfig with_topics(int topics);
  /// Throws Error when a field is out of range.
  void validate() const;

  bool operator==(const LdaConfig&) const = default;
};

struct TopicModel {
  Matrix phi;    ///< topics x terms
  Matrix theta;  ///< documents x topics
  corpus::Vocabulary vocabulary;
  /// Row labels of theta.
  std::vector<std::string> doc_ids;
  LdaConfig config;
  /// Log-likelihood of the training corpus after each sweep, computed from
  /// that sweep's point estimates.
  std::vector<double> log_likelihood_trace;

  std::size_t topic_count() const { return phi.rows(); }
};

/// Trains LDA by collapsed Gibbs sampling. Topic assignments start uniformly
/// at random from config.seed; each sweep resamples every token with its own
/// assignment removed from the counts, drawing topic k with weight
///
///   (n_dk + alpha) * (n_kw + beta) / (n_k + V * beta).
///
/// Counts are summed over every sweep after burn_in and averaged; phi and
/// theta are the prior-smoothed averages. Throws Error for empty input,
/// topics > V, or a token outside `vocab`.
TopicModel train_lda(std::span<const corpus::Document> docs, const corpus::Vocabulary& vocab,
                     const LdaConfig& config);

/// The n most probable terms of topic k, ties in vocabulary order.
std::vector<std::string> top_words(const TopicModel& model, std::size_t k, std::size_t n);
std::vector<std::pair<std::string, double>> top_words_with_probability(const TopicModel& model, std::size_t k,
                                                                       std::size_t n);

/// Sum over tokens of log(sum_k theta_dk * phi_kw). `docs` must be the
/// documents the model was trained on, in the same order.
double log_likelihood(std::span<const corpus::Document> docs, const TopicModel& model);

/// Model file: {schema_version, config, vocabulary, doc_ids, phi, theta,
/// log_likelihood_trace}; matrices as arrays of rows.
nlohmann::json to_json(const TopicModel& model);
/// Throws UserError on a schema mismatch or malformed content.
TopicModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LdaConfig& config);
LdaConfig lda_config_from_json(const nlohmann::json& j);

}  // namespace influencer::topics

#endif  // INFLUENCER_TOPICS_HPP_
