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

#include "influencer/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "influencer/csv.hpp"

namespace influencer::synth {
namespace {

constexpr std::size_t kGrid = 5;
constexpr double kBaseConcentration = 0.15;
constexpr double kGroupBoost = 0.35;
constexpr double kPriceBoost = 0.5;

// Filler the preprocessing strips again: stopwords, short words, URLs.
constexpr std::string_view kNoise[] = {"the", "is", "and", "to", "of", "ok", "so", "it", "this", "for"};

std::vector<double> make_prices(const SynthOptions& o, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 0.035);
  std::vector<double> prices(static_cast<std::size_t>(o.days));
  double log_price = std::log(2500.0);
  for (int d = 0; d < o.days; ++d) {
    // A boom and bust on top of a random walk.
    const double cycle = 0.012 * std::sin(2.0 * std::numbers::pi * d / 365.0);
    log_price += cycle + noise(rng);
    prices[static_cast<std::size_t>(d)] = std::round(std::exp(log_price) * 100.0) / 100.0;
  }
  return prices;
}

std::vector<double> dirichlet(const std::vector<double>& alpha, std::mt19937_64& rng) {
  std::vector<double> x(alpha.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    std::gamma_distribution<double> g(alpha[k], 1.0);
    x[k] = g(rng);
    sum += x[k];
  }
  if (sum <= 0.0) {
    // Every draw underflowed; fall back to the largest concentration.
    auto k = static_cast<std::size_t>(std::max_element(alpha.begin(), alpha.end()) - alpha.begin());
    std::fill(x.begin(), x.end(), 0.0);
    x[k] = 1.0;
    return x;
  }
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

void SynthOptions::validate() const {
  if (docs < 1) throw UserError("synthetic corpus needs at least one document");
  if (doc_length < corpus::kMinDocumentTokens) {
    throw UserError(fmt::format("document length must be at least {}", corpus::kMinDocumentTokens));
  }
  if (topics < 1 || topics > 2 * kGrid) throw UserError(fmt::format("topics must lie in [1, {}]", 2 * kGrid));
  if (days < 1) throw UserError("synthetic corpus needs at least one day");
}

const std::vector<std::string>& grid_terms() {
  static const std::vector<std::string> terms = {
      "price", "buy",        "sell",       "profit", "invest",      //
      "core",  "miner",      "network",    "node",   "protocol",    //
      "trade", "chart",      "bull",       "bear",   "volume",      //
      "bank",  "regulation", "government", "law",    "tax",         //
      "crypto", "blockchain", "future",    "world",  "money",
  };
  return terms;
}

SyntheticDataset make_synthetic(const SynthOptions& o) {
  o.validate();
  std::mt19937_64 rng(o.seed);
  const std::size_t K = o.topics;
  const std::size_t users = o.users ? o.users : std::max<std::size_t>(10, o.docs / 8);
  const auto& terms = grid_terms();

  SyntheticDataset data;
  data.terms = terms;
  data.phi = topics::Matrix(K, terms.size());
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < kGrid; ++i) {
      const std::size_t cell = k < kGrid ? k * kGrid + i : i * kGrid + (k - kGrid);
      data.phi(k, cell) = 1.0 / kGrid;
    }
  }

  const auto price_values = make_prices(o, rng);
  {
    std::vector<analysis::SeriesPoint> points;
    for (int d = 0; d < o.days; ++d) points.push_back({o.start + std::chrono::days{d}, price_values[static_cast<std::size_t>(d)]});
    data.prices = analysis::PriceSeries(std::move(points));
  }
  const auto [pmin, pmax] = std::minmax_element(price_values.begin(), price_values.end());
  const double price_range = *pmax - *pmin;

  // Users 0..users-1 by decreasing fame; the last 5% never post.
  const std::size_t lurkers = users / 20;
  const std::size_t posters = users - lurkers;
  const std::size_t famous = std::max<std::size_t>(1, users / 20);
  std::vector<double> fame(posters);
  for (std::size_t u = 0; u < posters; ++u) fame[u] = 1.0 / std::pow(static_cast<double>(u + 1), 1.1);
  std::discrete_distribution<std::size_t> pick_target(fame.begin(), fame.end());
  std::uniform_int_distribution<std::size_t> pick_poster(0, posters - 1);
  std::uniform_int_distribution<std::size_t> pick_user(0, users - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> second_of_day(0, 86399);
  std::uniform_int_distribution<std::size_t> pick_noise(0, std::size(kNoise) - 1);

  auto user_id = [](std::size_t u) { return fmt::format("u{:05d}", u); };
  std::vector<std::vector<std::size_t>> posts_by_user(users);
  std::vector<std::size_t> all_posts;
  data.theta = topics::Matrix(o.docs, K);

  for (std::size_t i = 0; i < o.docs; ++i) {
    corpus::RawTweet t;
    t.id = fmt::format("t{:07d}", i);
    const int day_index = static_cast<int>(i * static_cast<std::size_t>(o.days) / o.docs);
    t.created_at = Timestamp{o.start + std::chrono::days{day_index}} + std::chrono::seconds{second_of_day(rng)};

    const double roll = unit(rng);
    if (all_posts.empty() || roll < 0.75) {
      t.kind = corpus::TweetKind::kPost;
    } else {
      t.kind = roll < 0.95 ? corpus::TweetKind::kComment : corpus::TweetKind::kRetweet;
    }

    std::size_t author = t.kind == corpus::TweetKind::kPost ? pick_poster(rng) : pick_user(rng);
    t.user_id = user_id(author);

    std::size_t parent = 0;
    if (t.kind != corpus::TweetKind::kPost) {
      bool found = false;
      for (int attempt = 0; attempt < 50 && !found; ++attempt) {
        const auto& candidates = posts_by_user[pick_target(rng)];
        if (candidates.empty()) continue;
        parent = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
        found = true;
      }
      if (!found) parent = all_posts[std::uniform_int_distribution<std::size_t>(0, all_posts.size() - 1)(rng)];
      t.parent_id = data.tweets[parent].id;
    }

    if (t.kind == corpus::TweetKind::kRetweet) {
      for (std::size_t k = 0; k < K; ++k) data.theta(i, k) = data.theta(parent, k);
      t.text = fmt::format("RT @{}", data.tweets[parent].user_id);
    } else {
      std::vector<double> alpha(K, kBaseConcentration);
      if (K > 1) {
        alpha[author < famous ? 1 : 0] += kGroupBoost;
        const double level = price_range > 0.0 ? (price_values[static_cast<std::size_t>(day_index)] - *pmin) / price_range : 0.5;
        alpha[0] += kPriceBoost * level;
      }
      const auto mix = dirichlet(alpha, rng);
      for (std::size_t k = 0; k < K; ++k) data.theta(i, k) = mix[k];

      std::discrete_distribution<std::size_t> pick_topic(mix.begin(), mix.end());
      std::uniform_int_distribution<std::size_t> pick_cell(0, kGrid - 1);
      std::string text;
      for (std::size_t n = 0; n < o.doc_length; ++n) {
        if (unit(rng) < 0.1) {
          text += kNoise[pick_noise(rng)];
          text += ' ';
        }
        const std::size_t k = pick_topic(rng);
        const std::size_t c = pick_cell(rng);
        const std::size_t cell = k < kGrid ? k * kGrid + c : c * kGrid + (k - kGrid);
        std::string word = terms[cell];
        if (n == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
        text += word;
        text += n + 1 < o.doc_length ? " " : "";
      }
      if (unit(rng) < 0.3) text += fmt::format(" https://example.com/{}", t.id);
      t.text = std::move(text);
    }

    if (t.kind == corpus::TweetKind::kPost) {
      posts_by_user[author].push_back(i);
      all_posts.push_back(i);
    }
    data.tweets.push_back(std::move(t));
  }
  return data;
}

nlohmann::json ground_truth_json(const SyntheticDataset& data, const SynthOptions& o) {
  auto rows = [](const topics::Matrix& m) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    return out;
  };
  std::vector<std::string> ids;
  for (const auto& t : data.tweets) ids.push_back(t.id);
  return {{"schema_version", kSchemaVersion},
          {"seed", o.seed},
          {"docs", o.docs},
          {"doc_length", o.doc_length},
          {"topics", o.topics},
          {"terms", data.terms},
          {"phi", rows(data.phi)},
          {"doc_ids", ids},
          {"theta", rows(data.theta)}};
}

void write_dataset(const SyntheticDataset& data, const SynthOptions& o, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw UserError(fmt::format("cannot write '{}'", (dir / name).string()));
    return out;
  };

  {
    auto out = open("tweets.jsonl");
    for (const auto& t : data.tweets) {
      nlohmann::json j = {{"id", t.id},
                          {"user_id", t.user_id},
                          {"created_at", format_timestamp(t.created_at)},
                          {"text", t.text},
                          {"kind", corpus::to_string(t.kind)}};
      if (t.parent_id) j["parent_id"] = *t.parent_id;
      out << j.dump() << '\n';
    }
  }
  {
    auto out = open("prices.csv");
    out << "date,close\n";
    for (const auto& p : data.prices.points()) out << fmt::format("{},{:.2f}\n", format_day(p.day), p.value);
  }
  {
    auto out = open("ground_truth.json");
    out << ground_truth_json(data, o).dump(1) << '\n';
  }
  {
    auto out = open("config.toml");
    out << fmt::format(
        "# Synthetic dataset: {} tweets, {} planted topics, seed {}.\n"
        "tweets = \"tweets.jsonl\"\n"
        "prices = \"prices.csv\"\n"
        "out = \"out\"\n"
        "seed = {}\n"
        "lda_k = {}\n",
        o.docs, o.topics, o.seed, o.seed, o.topics);
  }
}

std::vector<double> topic_recovery(const topics::TopicModel& model, const topics::Matrix& planted_phi,
                                   const std::vector<std::string>& planted_terms) {
  // Express the planted rows over the model's vocabulary.
  const std::size_t V = model.vocabulary.size();
  std::vector<std::vector<double>> truth(planted_phi.rows(), std::vector<double>(V, 0.0));
  for (std::size_t c = 0; c < planted_terms.size(); ++c) {
    auto w = model.vocabulary.index(planted_terms[c]);
    if (!w) continue;
    for (std::size_t k = 0; k < planted_phi.rows(); ++k) truth[k][*w] = planted_phi(k, c);
  }
  std::vector<double> out;
  for (const auto& row : truth) {
    double best = 0.0;
    if (std::any_of(row.begin(), row.end(), [](double v) { return v > 0.0; })) {
      for (std::size_t j = 0; j < model.topic_count(); ++j) {
        best = std::max(best, analysis::cosine_similarity(row, model.phi.row(j)));
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace influencer::synth
