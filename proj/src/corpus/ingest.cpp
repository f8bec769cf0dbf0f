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
#include <fstream>
#include <unordered_map>
#include <variant>

#include <fmt/format.h>

#include "influencer/corpus.hpp"
#include "influencer/csv.hpp"

namespace influencer::corpus {
namespace {

using nlohmann::json;

constexpr std::string_view kColumns[] = {"id", "user_id", "created_at", "text", "kind", "parent_id"};

// Ids are usually strings, but numeric ids are common in exports.
std::optional<std::string> id_field(const json& obj, std::string_view key, std::string& reason) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return it->dump();
  reason = fmt::format("field '{}' must be a string", key);
  return std::nullopt;
}

struct FieldValues {
  std::optional<std::string> id, user_id, created_at, text, kind, parent_id;
};

// Shared by both formats once the raw fields are extracted.
std::variant<RawTweet, std::string> make_tweet(const FieldValues& f) {
  if (!f.id || f.id->empty()) return std::string("missing id");
  if (!f.user_id || f.user_id->empty()) return std::string("missing user_id");
  if (!f.created_at) return std::string("missing created_at");
  if (!f.text) return std::string("missing text");
  if (!f.kind) return std::string("missing kind");

  RawTweet tweet;
  tweet.id = *f.id;
  tweet.user_id = *f.user_id;
  tweet.text = *f.text;
  auto kind = parse_kind(*f.kind);
  if (!kind) return fmt::format("unknown kind '{}'", *f.kind);
  tweet.kind = *kind;
  try {
    tweet.created_at = parse_timestamp(*f.created_at);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  if (f.parent_id && !f.parent_id->empty()) tweet.parent_id = *f.parent_id;
  if (auto reason = validate(tweet)) return *reason;
  return tweet;
}

std::variant<RawTweet, std::string> parse_json_line(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error&) {
    return std::string("invalid JSON");
  }
  if (!obj.is_object()) return std::string("record is not a JSON object");

  FieldValues f;
  std::string reason;
  f.id = id_field(obj, "id", reason);
  f.user_id = id_field(obj, "user_id", reason);
  f.parent_id = id_field(obj, "parent_id", reason);
  if (!reason.empty()) return reason;
  for (auto [key, slot] : {std::pair{"created_at", &f.created_at}, std::pair{"text", &f.text},
                           std::pair{"kind", &f.kind}}) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) continue;
    if (!it->is_string()) return fmt::format("field '{}' must be a string", key);
    *slot = it->get<std::string>();
  }
  return make_tweet(f);
}

class Accumulator {
 public:
  void add(std::size_t line, std::variant<RawTweet, std::string> parsed) {
    ++records_;
    if (auto* reason = std::get_if<std::string>(&parsed)) {
      result_.errors.push_back({line, std::move(*reason)});
      return;
    }
    auto& tweet = std::get<RawTweet>(parsed);
    ++result_.accepted;
    auto [it, inserted] = position_.try_emplace(tweet.id, result_.tweets.size());
    if (inserted) {
      result_.tweets.push_back(std::move(tweet));
    } else {
      ++result_.duplicate_ids;
      result_.tweets[it->second] = std::move(tweet);
    }
  }

  IngestResult finish() && {
    if (records_ > 0 && 2 * result_.errors.size() > records_) {
      throw UserError(fmt::format(
          "{} of {} records are malformed (first: line {}: {}); is the input format right?",
          result_.errors.size(), records_, result_.errors.front().line,
          result_.errors.front().reason));
    }
    return std::move(result_);
  }

 private:
  IngestResult result_;
  std::unordered_map<std::string, std::size_t> position_;
  std::size_t records_ = 0;
};

IngestResult ingest_jsonl(std::istream& in) {
  Accumulator acc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    acc.add(line_no, parse_json_line(line));
  }
  return std::move(acc).finish();
}

IngestResult ingest_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  if (!reader.next(fields, line_no)) return {};

  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
  for (auto name : kColumns) {
    if (name != "parent_id" && !column.contains(std::string(name))) {
      throw UserError(fmt::format("CSV header lacks required column '{}'", name));
    }
  }

  Accumulator acc;
  for (;;) {
    try {
      if (!reader.next(fields, line_no)) break;
    } catch (const Error& e) {
      // An unterminated quote swallows the rest of the file.
      acc.add(line_no + 1, std::string(e.what()));
      break;
    }
    if (fields.size() == 1 && fields[0].empty()) continue;
    auto get = [&](std::string_view name) -> std::optional<std::string> {
      auto it = column.find(std::string(name));
      if (it == column.end() || it->second >= fields.size()) return std::nullopt;
      return fields[it->second];
    };
    if (fields.size() != column.size()) {
      acc.add(line_no, fmt::format("expected {} fields, found {}", column.size(), fields.size()));
      continue;
    }
    FieldValues f{get("id"), get("user_id"), get("created_at"), get("text"), get("kind"), get("parent_id")};
    acc.add(line_no, make_tweet(f));
  }
  return std::move(acc).finish();
}

}  // namespace

std::string_view to_string(TweetKind kind) {
  switch (kind) {
    case TweetKind::kPost: return "post";
    case TweetKind::kComment: return "comment";
    case TweetKind::kRetweet: return "retweet";
  }
  return "post";
}

std::optional<TweetKind> parse_kind(std::string_view text) {
  if (text == "post") return TweetKind::kPost;
  if (text == "comment") return TweetKind::kComment;
  if (text == "retweet") return TweetKind::kRetweet;
  return std::nullopt;
}

std::optional<std::string> validate(const RawTweet& tweet) {
  if (tweet.id.empty()) return "missing id";
  if (tweet.user_id.empty()) return "missing user_id";
  if (tweet.kind != TweetKind::kPost) {
    if (!tweet.parent_id) return fmt::format("{} without parent_id", to_string(tweet.kind));
    if (*tweet.parent_id == tweet.id) return "parent_id equals id";
  }
  return std::nullopt;
}

std::optional<InputFormat> parse_format(std::string_view text) {
  if (text == "jsonl" || text == "json") return InputFormat::kJsonl;
  if (text == "csv") return InputFormat::kCsv;
  return std::nullopt;
}

InputFormat format_for_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? InputFormat::kCsv : InputFormat::kJsonl;
}

nlohmann::json IngestResult::report() const {
  json errs = json::array();
  for (const auto& e : errors) errs.push_back({{"line", e.line}, {"reason", e.reason}});
  return {{"accepted", accepted},
          {"rejected", errors.size()},
          {"duplicate_ids", duplicate_ids},
          {"errors", std::move(errs)}};
}

IngestResult ingest(std::istream& in, InputFormat format) {
  return format == InputFormat::kCsv ? ingest_csv(in) : ingest_jsonl(in);
}

IngestResult ingest(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError(fmt::format("cannot read tweet file '{}'", path.string()));
  return ingest(in, format);
}

}  // namespace influencer::corpus
