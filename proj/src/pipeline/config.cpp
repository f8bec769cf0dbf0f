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

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "influencer/pipeline.hpp"

namespace influencer::pipeline {
namespace {

namespace fs = std::filesystem;

struct Value {
  enum class Type { kString, kInteger, kFloat, kBool, kArray };
  Type type = Type::kString;
  std::string text;
  std::int64_t integer = 0;
  double number = 0.0;
  bool boolean = false;
  std::vector<std::string> items;
  std::size_t line = 0;
};

std::string_view type_name(Value::Type t) {
  switch (t) {
    case Value::Type::kString: return "string";
    case Value::Type::kInteger: return "integer";
    case Value::Type::kFloat: return "float";
    case Value::Type::kBool: return "boolean";
    case Value::Type::kArray: return "array";
  }
  return "value";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  std::map<std::string, Value> parse() {
    std::map<std::string, Value> out;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') fail("tables are not supported; use flat keys");
      const std::size_t key_line = line_;
      std::string key = parse_key();
      skip_spaces();
      expect('=');
      skip_spaces();
      Value v = parse_value();
      v.line = key_line;
      end_of_line();
      if (!out.emplace(key, std::move(v)).second) fail(fmt::format("duplicate key '{}'", key), key_line);
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  [[noreturn]] void fail(const std::string& what, std::size_t line = 0) const {
    throw UserError(fmt::format("config line {}: {}", line ? line : line_, what));
  }

  void advance() {
    if (s_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) advance();
  }

  void skip_comment() {
    if (!at_end() && peek() == '#') {
      while (!at_end() && peek() != '\n') advance();
    }
  }

  void skip_blank_lines() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (at_end()) return;
      if (peek() == '\r' || peek() == '\n') {
        advance();
        continue;
      }
      return;
    }
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (!at_end() && peek() == '\r') advance();
    if (!at_end() && peek() != '\n') fail("unexpected text after value");
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(fmt::format("expected '{}'", c));
    advance();
  }

  std::string parse_key() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) advance();
    if (pos_ == start) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string parse_string() {
    const char quote = peek();
    advance();
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = peek();
      advance();
      if (c == quote) break;
      if (c == '\\' && quote == '"') {
        if (at_end()) fail("unterminated string");
        const char e = peek();
        advance();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(fmt::format("unsupported escape '\\{}'", e));
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  Value parse_value() {
    Value v;
    if (at_end()) fail("missing value");
    if (peek() == '"' || peek() == '\'') {
      v.type = Value::Type::kString;
      v.text = parse_string();
      return v;
    }
    if (peek() == '[') {
      advance();
      v.type = Value::Type::kArray;
      while (true) {
        skip_blank_lines();
        if (at_end()) fail("unterminated array");
        if (peek() == ']') {
          advance();
          break;
        }
        if (peek() != '"' && peek() != '\'') fail("arrays may only hold strings");
        v.items.push_back(parse_string());
        skip_blank_lines();
        if (!at_end() && peek() == ',') {
          advance();
          continue;
        }
        skip_blank_lines();
        if (at_end() || peek() != ']') fail("expected ',' or ']' in array");
      }
      return v;
    }
    const std::size_t start = pos_;
    while (!at_end() && peek() != ' ' && peek() != '\t' && peek() != '#' && peek() != '\r' && peek() != '\n') advance();
    const std::string_view token = s_.substr(start, pos_ - start);
    if (token == "true" || token == "false") {
      v.type = Value::Type::kBool;
      v.boolean = token == "true";
      return v;
    }
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && token.front() == '+') ++first;
    if (auto [p, ec] = std::from_chars(first, last, v.integer); ec == std::errc{} && p == last) {
      v.type = Value::Type::kInteger;
      return v;
    }
    if (auto [p, ec] = std::from_chars(first, last, v.number); ec == std::errc{} && p == last) {
      v.type = Value::Type::kFloat;
      return v;
    }
    fail(fmt::format("cannot parse value '{}'", token));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

[[noreturn]] void wrong_type(const std::string& key, const Value& v, std::string_view wanted) {
  throw UserError(fmt::format("config line {}: '{}' must be a {}, got {}", v.line, key, wanted, type_name(v.type)));
}

std::string as_string(const std::string& key, const Value& v) {
  if (v.type != Value::Type::kString) wrong_type(key, v, "string");
  return v.text;
}

std::int64_t as_integer(const std::string& key, const Value& v) {
  if (v.type != Value::Type::kInteger) wrong_type(key, v, "integer");
  return v.integer;
}

int as_int(const std::string& key, const Value& v) {
  const auto i = as_integer(key, v);
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
    throw UserError(fmt::format("config line {}: '{}' is out of range", v.line, key));
  }
  return static_cast<int>(i);
}

double as_double(const std::string& key, const Value& v) {
  if (v.type == Value::Type::kInteger) return static_cast<double>(v.integer);
  if (v.type != Value::Type::kFloat) wrong_type(key, v, "number");
  return v.number;
}

bool as_bool(const std::string& key, const Value& v) {
  if (v.type != Value::Type::kBool) wrong_type(key, v, "boolean");
  return v.boolean;
}

std::vector<std::string> as_array(const std::string& key, const Value& v) {
  if (v.type != Value::Type::kArray) wrong_type(key, v, "array of strings");
  return v.items;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return fs::absolute(path).lexically_normal();
}

Day day_value(const std::string& key, const std::string& text) {
  try {
    return parse_day(text);
  } catch (const Error& e) {
    throw UserError(fmt::format("'{}': {}", key, e.what()));
  }
}

analysis::DayWindow parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw UserError(fmt::format("window '{}' must look like YYYY-MM-DD:YYYY-MM-DD", text));
  }
  return {day_value("windows", text.substr(0, colon)), day_value("windows", text.substr(colon + 1))};
}

std::string window_text(const analysis::DayWindow& w) { return format_day(w.start) + ":" + format_day(w.end); }

FrequencyWord parse_frequency_word(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {"", text};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

std::string frequency_word_text(const FrequencyWord& w) {
  return w.category.empty() ? w.word : w.category + ":" + w.word;
}

std::string format_name(corpus::InputFormat f) { return f == corpus::InputFormat::kCsv ? "csv" : "jsonl"; }

corpus::InputFormat format_value(const std::string& text) {
  auto f = corpus::parse_format(text);
  if (!f) throw UserError(fmt::format("unknown tweets_format '{}' (expected jsonl, json or csv)", text));
  return *f;
}

std::string toml_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string toml_array(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + toml_string(items[i]);
  return out + "]";
}

}  // namespace

std::vector<FrequencyWord> default_frequency_words() {
  return {{"market", "price"},  {"market", "buy"},    {"market", "sell"},    {"market", "profit"},
          {"market", "invest"}, {"technical", "core"}, {"technical", "miner"}, {"technical", "network"},
          {"technical", "node"}, {"technical", "protocol"}};
}

std::vector<analysis::DayWindow> default_windows() {
  using std::chrono::year;
  return {{Day{year{2017} / 12 / 1}, Day{year{2018} / 4 / 30}},
          {Day{year{2018} / 4 / 1}, Day{year{2018} / 8 / 31}},
          {Day{year{2019} / 1 / 1}, Day{year{2019} / 5 / 31}}};
}

PipelineConfig PipelineConfig::parse(std::string_view text, const fs::path& base_dir) {
  PipelineConfig c;
  for (const auto& [key, v] : Parser(text).parse()) {
    if (key == "tweets") {
      c.tweets = resolve(base_dir, as_string(key, v));
    } else if (key == "tweets_format") {
      c.tweets_format = format_value(as_string(key, v));
    } else if (key == "prices") {
      c.prices = resolve(base_dir, as_string(key, v));
    } else if (key == "stopwords") {
      c.stopwords = resolve(base_dir, as_string(key, v));
    } else if (key == "custom_stopwords") {
      c.custom_stopwords = as_array(key, v);
    } else if (key == "date_start") {
      c.date_start = day_value(key, as_string(key, v));
    } else if (key == "date_end") {
      c.date_end = day_value(key, as_string(key, v));
    } else if (key == "out") {
      c.out = resolve(base_dir, as_string(key, v));
    } else if (key == "seed") {
      const auto s = as_integer(key, v);
      if (s < 0) throw UserError(fmt::format("config line {}: seed must be non-negative", v.line));
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "hits_max_iter") {
      c.hits.max_iter = as_int(key, v);
    } else if (key == "hits_tol") {
      c.hits.tol = as_double(key, v);
    } else if (key == "threshold") {
      c.threshold = as_double(key, v);
    } else if (key == "lda_k") {
      c.lda_k = as_int(key, v);
    } else if (key == "lda_alpha") {
      c.lda_alpha = as_double(key, v);
    } else if (key == "lda_beta") {
      c.lda_beta = as_double(key, v);
    } else if (key == "lda_iterations") {
      c.lda_iterations = as_int(key, v);
    } else if (key == "lda_burn_in") {
      c.lda_burn_in = as_int(key, v);
    } else if (key == "top_words") {
      c.top_words = as_int(key, v);
    } else if (key == "correlate") {
      c.correlate = as_bool(key, v);
    } else if (key == "window_days") {
      c.window_days = as_int(key, v);
    } else if (key == "windows") {
      c.windows.clear();
      for (const auto& w : as_array(key, v)) c.windows.push_back(parse_window(w));
    } else if (key == "frequency_words") {
      c.frequency_words.clear();
      for (const auto& w : as_array(key, v)) c.frequency_words.push_back(parse_frequency_word(w));
    } else {
      throw UserError(fmt::format("config line {}: unknown key '{}'", v.line, key));
    }
  }
  if (c.out.is_relative()) c.out = resolve(base_dir, c.out.string());
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UserError(fmt::format("cannot read config file '{}'", file.string()));
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse(text.str(), fs::absolute(file).parent_path());
  } catch (const UserError& e) {
    throw UserError(fmt::format("{}: {}", file.string(), e.what()));
  }
}

std::string PipelineConfig::to_toml() const {
  std::string text;
  auto line = [&](std::string_view key, const std::string& value) { text += fmt::format("{} = {}\n", key, value); };
  if (!tweets.empty()) line("tweets", toml_string(tweets.string()));
  if (tweets_format) line("tweets_format", toml_string(format_name(*tweets_format)));
  if (!prices.empty()) line("prices", toml_string(prices.string()));
  if (!stopwords.empty()) line("stopwords", toml_string(stopwords.string()));
  line("custom_stopwords", toml_array(custom_stopwords));
  if (date_start) line("date_start", toml_string(format_day(*date_start)));
  if (date_end) line("date_end", toml_string(format_day(*date_end)));
  line("out", toml_string(out.string()));
  if (seed) line("seed", fmt::format("{}", *seed));
  line("hits_max_iter", fmt::format("{}", hits.max_iter));
  line("hits_tol", fmt::format("{}", hits.tol));
  line("threshold", fmt::format("{}", threshold));
  line("lda_k", fmt::format("{}", lda_k));
  if (lda_alpha) line("lda_alpha", fmt::format("{}", *lda_alpha));
  line("lda_beta", fmt::format("{}", lda_beta));
  line("lda_iterations", fmt::format("{}", lda_iterations));
  line("lda_burn_in", fmt::format("{}", lda_burn_in));
  line("top_words", fmt::format("{}", top_words));
  line("correlate", correlate ? "true" : "false");
  line("window_days", fmt::format("{}", window_days));
  std::vector<std::string> items;
  for (const auto& w : windows) items.push_back(window_text(w));
  line("windows", toml_array(items));
  items.clear();
  for (const auto& w : frequency_words) items.push_back(frequency_word_text(w));
  line("frequency_words", toml_array(items));
  return text;
}

nlohmann::json PipelineConfig::to_json() const {
  auto path_or_null = [](const fs::path& p) { return p.empty() ? nlohmann::json() : nlohmann::json(p.string()); };
  auto day_or_null = [](const std::optional<Day>& d) { return d ? nlohmann::json(format_day(*d)) : nlohmann::json(); };
  std::vector<std::string> windows_text, words_text;
  for (const auto& w : windows) windows_text.push_back(window_text(w));
  for (const auto& w : frequency_words) words_text.push_back(frequency_word_text(w));
  return {{"tweets", path_or_null(tweets)},
          {"tweets_format", tweets_format ? nlohmann::json(format_name(*tweets_format)) : nlohmann::json()},
          {"prices", path_or_null(prices)},
          {"stopwords", path_or_null(stopwords)},
          {"custom_stopwords", custom_stopwords},
          {"date_start", day_or_null(date_start)},
          {"date_end", day_or_null(date_end)},
          {"out", out.string()},
          {"seed", seed ? nlohmann::json(*seed) : nlohmann::json()},
          {"hits_max_iter", hits.max_iter},
          {"hits_tol", hits.tol},
          {"threshold", threshold},
          {"lda_k", lda_k},
          {"lda_alpha", lda_alpha ? nlohmann::json(*lda_alpha) : nlohmann::json()},
          {"lda_beta", lda_beta},
          {"lda_iterations", lda_iterations},
          {"lda_burn_in", lda_burn_in},
          {"top_words", top_words},
          {"correlate", correlate},
          {"window_days", window_days},
          {"windows", windows_text},
          {"frequency_words", words_text}};
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  try {
    PipelineConfig c;
    auto path = [&](const char* key) { return j.at(key).is_null() ? fs::path() : fs::path(j.at(key).get<std::string>()); };
    auto day = [&](const char* key) -> std::optional<Day> {
      if (j.at(key).is_null()) return std::nullopt;
      return day_value(key, j.at(key).get<std::string>());
    };
    c.tweets = path("tweets");
    if (!j.at("tweets_format").is_null()) c.tweets_format = format_value(j.at("tweets_format").get<std::string>());
    c.prices = path("prices");
    c.stopwords = path("stopwords");
    c.custom_stopwords = j.at("custom_stopwords").get<std::vector<std::string>>();
    c.date_start = day("date_start");
    c.date_end = day("date_end");
    c.out = j.at("out").get<std::string>();
    if (!j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
    c.hits.max_iter = j.at("hits_max_iter").get<int>();
    c.hits.tol = j.at("hits_tol").get<double>();
    c.threshold = j.at("threshold").get<double>();
    c.lda_k = j.at("lda_k").get<int>();
    if (!j.at("lda_alpha").is_null()) c.lda_alpha = j.at("lda_alpha").get<double>();
    c.lda_beta = j.at("lda_beta").get<double>();
    c.lda_iterations = j.at("lda_iterations").get<int>();
    c.lda_burn_in = j.at("lda_burn_in").get<int>();
    c.top_words = j.at("top_words").get<int>();
    c.correlate = j.at("correlate").get<bool>();
    c.window_days = j.at("window_days").get<int>();
    c.windows.clear();
    for (const auto& w : j.at("windows").get<std::vector<std::string>>()) c.windows.push_back(parse_window(w));
    c.frequency_words.clear();
    for (const auto& w : j.at("frequency_words").get<std::vector<std::string>>()) {
      c.frequency_words.push_back(parse_frequency_word(w));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw UserError(fmt::format("malformed config echo: {}", e.what()));
  }
}

void PipelineConfig::validate() const {
  if (!seed) throw UserError("a seed is required (set 'seed' in the config or pass --seed)");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw UserError(fmt::format("threshold {} is outside (0, 1]", threshold));
  if (hits.max_iter < 1) throw UserError("hits_max_iter must be at least 1");
  if (!(hits.tol > 0.0)) throw UserError("hits_tol must be positive");
  if (top_words < 1) throw UserError("top_words must be at least 1");
  if (window_days < 1) throw UserError("window_days must be at least 1");
  if (date_start && date_end && *date_start > *date_end) throw UserError("date_start is after date_end");
  for (const auto& w : windows) {
    if (w.start > w.end) throw UserError(fmt::format("window {} ends before it starts", window_text(w)));
  }
  for (const auto& w : frequency_words) {
    if (w.word.empty()) throw UserError("frequency_words entries need a word");
  }
  try {
    lda_config().validate();
  } catch (const UserError&) {
    throw;
  } catch (const Error& e) {
    throw UserError(e.what());
  }
}

topics::LdaConfig PipelineConfig::lda_config() const {
  topics::LdaConfig c;
  c.topics = lda_k;
  c.alpha = lda_alpha ? *lda_alpha : (lda_k > 0 ? 1.0 / lda_k : 0.0);
  c.beta = lda_beta;
  c.iterations = lda_iterations;
  c.burn_in = lda_burn_in;
  c.seed = seed.value_or(0);
  return c;
}

corpus::StopwordList PipelineConfig::stopword_list() const {
  auto list = stopwords.empty() ? corpus::StopwordList::bundled() : corpus::StopwordList::from_file(stopwords);
  for (const auto& w : custom_stopwords) list.add_custom(w);
  return list;
}

}  // namespace influencer::pipeline
