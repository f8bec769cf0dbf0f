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
#include <set>

#include <fmt/format.h>

#include "influencer/corpus.hpp"

namespace influencer::corpus {

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

std::optional<std::size_t> Vocabulary::index(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DocumentSet build_documents(std::span<const RawTweet> tweets, const StopwordList& stopwords,
                            const Lemmatizer& lemmatizer) {
  std::unordered_map<std::string_view, std::size_t> by_id;
  by_id.reserve(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) by_id.emplace(tweets[i].id, i);

  // A retweet carries the original's text; chains of retweets resolve to the
  // first non-retweet ancestor present in the corpus.
  auto source_text = [&](const RawTweet& tweet) -> const std::string& {
    const RawTweet* cur = &tweet;
    for (std::size_t hops = 0; hops < tweets.size() && cur->kind == TweetKind::kRetweet; ++hops) {
      auto it = by_id.find(*cur->parent_id);
      if (it == by_id.end()) break;
      cur = &tweets[it->second];
    }
    return cur->text;
  };

  DocumentSet out;
  std::set<std::string> terms;
  for (const auto& tweet : tweets) {
    auto tokens = preprocess(source_text(tweet), stopwords, lemmatizer);
    if (tokens.size() < kMinDocumentTokens) {
      ++out.dropped_short;
      continue;
    }
    terms.insert(tokens.begin(), tokens.end());
    out.documents.push_back({tweet.id, tweet.user_id, day_of(tweet.created_at), std::move(tokens)});
  }
  if (out.documents.empty()) throw Error("no usable documents");
  out.vocabulary = Vocabulary(std::vector<std::string>(terms.begin(), terms.end()));
  return out;
}

std::map<std::string, double> word_frequencies(std::span<const Document> docs,
                                               std::span<const std::string> words) {
  std::map<std::string, double> counts;
  for (const auto& w : words) counts[w] = 0.0;
  std::size_t total = 0;
  for (const auto& doc : docs) {
    total += doc.tokens.size();
    for (const auto& t : doc.tokens) {
      if (auto it = counts.find(t); it != counts.end()) it->second += 1.0;
    }
  }
  if (total == 0) throw Error("empty group");
  for (auto& [word, value] : counts) value = 100.0 * value / static_cast<double>(total);
  return counts;
}

}  // namespace influencer::corpus
