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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "influencer/topics.hpp"

namespace influencer::topics {
namespace {

// Token ids per document.
using Corpus = std::vector<std::vector<std::uint32_t>>;

Corpus encode(std::span<const corpus::Document> docs, const corpus::Vocabulary& vocab) {
  Corpus out;
  out.reserve(docs.size());
  for (const auto& doc : docs) {
    auto& ids = out.emplace_back();
    ids.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) {
      auto w = vocab.index(t);
      if (!w) throw Error(fmt::format("token '{}' of document {} is not in the vocabulary", t, doc.doc_id));
      ids.push_back(static_cast<std::uint32_t>(*w));
    }
  }
  return out;
}

// Count tables of one Gibbs state.
struct Counts {
  std::size_t topics, terms;
  std::vector<std::int64_t> doc_topic;   // D x K
  std::vector<std::int64_t> topic_term;  // K x V
  std::vector<std::int64_t> topic_total; // K
  std::vector<std::int64_t> doc_total;   // D
};

double corpus_log_likelihood(const Corpus& corpus, const Counts& c, double alpha, double beta) {
  const std::size_t K = c.topics, V = c.terms;
  std::vector<double> phi_den(K);
  for (std::size_t k = 0; k < K; ++k) phi_den[k] = static_cast<double>(c.topic_total[k]) + V * beta;
  double ll = 0.0;
  std::vector<double> theta(K);
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const double den = static_cast<double>(c.doc_total[d]) + K * alpha;
    for (std::size_t k = 0; k < K; ++k) theta[k] = (static_cast<double>(c.doc_topic[d * K + k]) + alpha) / den;
    for (auto w : corpus[d]) {
      double p = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        p += theta[k] * (static_cast<double>(c.topic_term[k * V + w]) + beta) / phi_den[k];
      }
      ll += std::log(p);
    }
  }
  return ll;
}

}  // namespace

LdaConfig LdaConfig::with_topics(int topics) {
  LdaConfig c;
  c.topics = topics;
  c.alpha = 1.0 / topics;
  return c;
}

void LdaConfig::validate() const {
  if (topics < 1) throw Error("LDA needs at least one topic");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("LDA alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error("LDA beta must be positive");
  if (iterations < 1) throw Error("LDA needs at least one iteration");
  if (burn_in < 0 || burn_in >= iterations) throw Error("LDA burn_in must lie in [0, iterations)");
}

TopicModel train_lda(std::span<const corpus::Document> docs, const corpus::Vocabulary& vocab,
                     const LdaConfig& config) {
  config.validate();
  if (docs.empty()) throw Error("cannot train LDA on an empty document set");
  const std::size_t K = static_cast<std::size_t>(config.topics);
  const std::size_t V = vocab.size();
  const std::size_t D = docs.size();
  if (K > V) throw Error(fmt::format("{} topics exceed the vocabulary size {}", K, V));

  const Corpus corpus = encode(docs, vocab);
  const double alpha = config.alpha;
  const double beta = config.beta;
  const double v_beta = static_cast<double>(V) * beta;

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::size_t> initial_topic(0, K - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Counts c{K, V, std::vector<std::int64_t>(D * K), std::vector<std::int64_t>(K * V), std::vector<std::int64_t>(K),
           std::vector<std::int64_t>(D)};
  std::vector<std::vector<std::uint32_t>> z(D);
  for (std::size_t d = 0; d < D; ++d) {
    z[d].resize(corpus[d].size());
    c.doc_total[d] = static_cast<std::int64_t>(corpus[d].size());
    for (std::size_t i = 0; i < corpus[d].size(); ++i) {
      const std::size_t k = initial_topic(rng);
      z[d][i] = static_cast<std::uint32_t>(k);
      ++c.doc_topic[d * K + k];
      ++c.topic_term[k * V + corpus[d][i]];
      ++c.topic_total[k];
    }
  }

  std::vector<std::int64_t> sum_doc_topic(D * K, 0), sum_topic_term(K * V, 0);
  std::int64_t samples = 0;
  std::vector<double> weight(K);

  TopicModel model;
  model.log_likelihood_trace.reserve(static_cast<std::size_t>(config.iterations));
  for (int sweep = 1; sweep <= config.iterations; ++sweep) {
    for (std::size_t d = 0; d < D; ++d) {
      std::int64_t* nd = &c.doc_topic[d * K];
      for (std::size_t i = 0; i < corpus[d].size(); ++i) {
        const std::size_t w = corpus[d][i];
        std::size_t k = z[d][i];
        --nd[k];
        --c.topic_term[k * V + w];
        --c.topic_total[k];

        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (static_cast<double>(nd[t]) + alpha) * (static_cast<double>(c.topic_term[t * V + w]) + beta) /
                   (static_cast<double>(c.topic_total[t]) + v_beta);
          weight[t] = total;
        }
        const double u = unit(rng) * total;
        k = static_cast<std::size_t>(std::upper_bound(weight.begin(), weight.end(), u) - weight.begin());
        if (k >= K) k = K - 1;

        z[d][i] = static_cast<std::uint32_t>(k);
        ++nd[k];
        ++c.topic_term[k * V + w];
        ++c.topic_total[k];
      }
    }
    model.log_likelihood_trace.push_back(corpus_log_likelihood(corpus, c, alpha, beta));
    if (sweep > config.burn_in) {
      for (std::size_t j = 0; j < sum_doc_topic.size(); ++j) sum_doc_topic[j] += c.doc_topic[j];
      for (std::size_t j = 0; j < sum_topic_term.size(); ++j) sum_topic_term[j] += c.topic_term[j];
      ++samples;
    }
  }

  // Averaged post-burn-in counts, smoothed by the priors.
  const double s = static_cast<double>(samples);
  model.phi = Matrix(K, V);
  for (std::size_t k = 0; k < K; ++k) {
    double row_total = 0.0;
    for (std::size_t w = 0; w < V; ++w) row_total += static_cast<double>(sum_topic_term[k * V + w]) / s;
    const double den = row_total + v_beta;
    for (std::size_t w = 0; w < V; ++w) {
      model.phi(k, w) = (static_cast<double>(sum_topic_term[k * V + w]) / s + beta) / den;
    }
  }
  model.theta = Matrix(D, K);
  for (std::size_t d = 0; d < D; ++d) {
    const double den = static_cast<double>(corpus[d].size()) + static_cast<double>(K) * alpha;
    for (std::size_t k = 0; k < K; ++k) {
      model.theta(d, k) = (static_cast<double>(sum_doc_topic[d * K + k]) / s + alpha) / den;
    }
  }
  model.vocabulary = vocab;
  model.doc_ids.reserve(D);
  for (const auto& doc : docs) model.doc_ids.push_back(doc.doc_id);
  model.config = config;
  return model;
}

std::vector<std::pair<std::string, double>> top_words_with_probability(const TopicModel& model, std::size_t k,
                                                                       std::size_t n) {
  if (k >= model.topic_count()) {
    throw Error(fmt::format("topic {} out of range (model has {})", k, model.topic_count()));
  }
  const auto row = model.phi.row(k);
  std::vector<std::size_t> order(row.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] > row[b] : a < b; });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(model.vocabulary.term(order[i]), row[order[i]]);
  return out;
}

std::vector<std::string> top_words(const TopicModel& model, std::size_t k, std::size_t n) {
  std::vector<std::string> out;
  for (auto& [term, p] : top_words_with_probability(model, k, n)) out.push_back(std::move(term));
  return out;
}

double log_likelihood(std::span<const corpus::Document> docs, const TopicModel& model) {
  if (docs.size() != model.theta.rows()) {
    throw Error(fmt::format("{} documents given for a model trained on {}", docs.size(), model.theta.rows()));
  }
  const std::size_t K = model.topic_count();
  double ll = 0.0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& t : docs[d].tokens) {
      auto w = model.vocabulary.index(t);
      if (!w) throw Error(fmt::format("token '{}' is not in the model vocabulary", t));
      double p = 0.0;
      for (std::size_t k = 0; k < K; ++k) p += model.theta(d, k) * model.phi(k, *w);
      ll += std::log(p);
    }
  }
  return ll;
}

}  // namespace influencer::topics
