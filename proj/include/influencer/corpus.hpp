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

#ifndef INFLUENCER_CORPUS_HPP_
#define INFLUENCER_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/common.hpp"

namespace influencer::corpus {

enum class TweetKind { kPost, kComment, kRetweet };

std::string_view to_string(TweetKind kind);
std::optional<TweetKind> parse_kind(std::string_view text);

/// One ingested record.
struct RawTweet {
  std::string id;
  std::string user_id;
  Timestamp created_at;
  std::string text;
  TweetKind kind = TweetKind::kPost;
  /// The tweet acted upon; required for comments and retweets.
  std::optional<std::string> parent_id;

  bool operator==(const RawTweet&) const = default;
};

/// Checks the record invariants; returns a reason on violation.
std::optional<std::string> validate(const RawTweet& tweet);

enum class InputFormat { kJsonl, kCsv };

std::optional<InputFormat> parse_format(std::string_view text);
/// ".csv" maps to CSV, everything else to JSONL.
InputFormat format_for_path(const std::filesystem::path& path);

struct LineError {
  std::size_t line = 0;
  std::string reason;
};

struct IngestResult {
  /// Accepted tweets in input order. A repeated id replaces the earlier
  /// record in place.
  std::vector<RawTweet> tweets;
  std::vector<LineError> errors;
  /// Well-formed records, duplicates included.
  std::size_t accepted = 0;
  std::size_t duplicate_ids = 0;

  /// {accepted, rejected, duplicate_ids, errors: [{line, reason}]}
  nlohmann::json report() const;
};

/// Reads tweet records. Malformed records are collected as line errors;
/// more than half of the records being malformed is fatal (UserError), as is
/// an unreadable file.
IngestResult ingest(const std::filesystem::path& path, InputFormat format);
IngestResult ingest(std::istream& in, InputFormat format);

/// Stopwords: a base list plus user supplied extras, matched
/// case-insensitively.
class StopwordList {
 public:
  StopwordList() = default;

  /// The list shipped with the library (data/stopwords_en.txt).
  static StopwordList bundled();
  /// Parses the stopword file format: one term per line, '#' comments.
  static StopwordList parse(std::string_view text);
  static StopwordList from_file(const std::filesystem::path& path);

  void add_custom(std::string_view word);
  bool contains(std::string_view word) const;
  std::size_t size() const;

 private:
  std::unordered_set<std::string> base_;
  std::unordered_set<std::string> custom_;
};

/// Deterministic suffix-rule lemmatizer driven by a rule table
/// (data/lemma_rules.txt holds the bundled one and documents the format).
/// lemma() is idempotent: rules are applied until a fixed point.
class Lemmatizer {
 public:
  static const Lemmatizer& bundled();
  static Lemmatizer parse(std::string_view rules);

  std::string lemma(std::string_view word) const;

 private:
  struct Rule {
    std::string suffix;
    std::string replacement;
    std::size_t min_stem = 0;
  };
  std::vector<Rule> rules_;
  std::unordered_set<std::string> exceptions_;
};

/// Turns raw tweet text into tokens: strip URLs, lowercase, split on
/// non-letters, drop tokens with anything outside a-z, lemmatize, drop
/// stopwords (surface or lemma form), drop tokens shorter than 3 characters.
std::vector<std::string> preprocess(std::string_view text, const StopwordList& stopwords,
                                    const Lemmatizer& lemmatizer = Lemmatizer::bundled());

inline constexpr std::size_t kMinTokenLength = 3;
inline constexpr std::size_t kMinDocumentTokens = 5;

struct Document {
  std::string doc_id;
  std::string user_id;
  Day date;
  std::vector<std::string> tokens;

  bool operator==(const Document&) const = default;
};

/// Lexicographically ordered set of distinct terms.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Sorts and deduplicates.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::string& term(std::size_t i) const { return terms_.at(i); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<std::size_t> index(std::string_view term) const;

  bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct DocumentSet {
  std::vector<Document> documents;
  Vocabulary vocabulary;
  /// Candidates dropped for having fewer than kMinDocumentTokens tokens.
  std::size_t dropped_short = 0;
};

/// One candidate document per tweet, in input order. Retweets take the text
/// of the tweet they reference when it is in the corpus. Throws Error
/// "no usable documents" when nothing survives.
DocumentSet build_documents(std::span<const RawTweet> tweets, const StopwordList& stopwords,
                            const Lemmatizer& lemmatizer = Lemmatizer::bundled());

/// Percentage of all token occurrences in `docs` equal to each word.
/// Throws Error "empty group" when `docs` holds no tokens.
std::map<std::string, double> word_frequencies(std::span<const Document> docs,
                                               std::span<const std::string> words);

}  // namespace influencer::corpus

#endif  // INFLUENCER_CORPUS_HPP_
