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
#include <sstream>

#include <fmt/format.h>

#include "bundled_data.hpp"
#include "influencer/corpus.hpp"

namespace influencer::corpus {
namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Calls fn(line) for each non-empty line with '#' comments removed.
template <typename Fn>
void for_each_entry(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) fn(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

// Decodes one UTF-8 sequence at `pos`. Invalid bytes decode to U+FFFD and
// consume a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

// Approximate Unicode letter test covering the scripts that show up in
// tweets. Combining marks count as letters so that decomposed accents stay
// attached to their word.
bool is_letter(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  if (c == 0xAA || c == 0xB5 || c == 0xBA) return true;
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c >= 0x250 && c <= 0x2AF) return true;  // IPA
  if (c >= 0x300 && c <= 0x36F) return true;  // combining diacritics
  if (c >= 0x370 && c <= 0x3FF) return c != 0x37E && c != 0x387;
  if (c >= 0x400 && c <= 0x52F) return true;  // Cyrillic
  if (c >= 0x531 && c <= 0x587) return true;  // Armenian
  if (c >= 0x591 && c <= 0x5EA) return true;  // Hebrew
  if (c >= 0x610 && c <= 0x6FF) return !(c >= 0x660 && c <= 0x669) && c != 0x6D4;  // Arabic
  if (c >= 0x900 && c <= 0xDFF) return true;  // Indic scripts
  if (c >= 0xE00 && c <= 0xEFF) return true;  // Thai, Lao
  if (c >= 0x10A0 && c <= 0x11FF) return true;  // Georgian, Hangul Jamo
  if (c >= 0x1E00 && c <= 0x1FFF) return true;  // Latin/Greek extended
  if (c >= 0x3040 && c <= 0x30FF) return true;  // kana
  if (c >= 0x3400 && c <= 0x4DBF) return true;
  if (c >= 0x4E00 && c <= 0x9FFF) return true;  // CJK
  if (c >= 0xAC00 && c <= 0xD7A3) return true;  // Hangul
  if (c >= 0xF900 && c <= 0xFAFF) return true;
  if ((c >= 0xFF21 && c <= 0xFF3A) || (c >= 0xFF41 && c <= 0xFF5A)) return true;
  return false;
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Replaces every URL (from http://, https:// or www. up to the next
// whitespace) with a single space.
std::string strip_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (starts_with_ci(text, i, "http://") || starts_with_ci(text, i, "https://") ||
        starts_with_ci(text, i, "www.")) {
      while (i < text.size() && !is_space(text[i])) ++i;
      out.push_back(' ');
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

bool all_ascii_lower(std::string_view token) {
  return std::all_of(token.begin(), token.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

StopwordList StopwordList::bundled() { return parse(data::kStopwords); }

StopwordList StopwordList::parse(std::string_view text) {
  StopwordList list;
  for_each_entry(text, [&](std::string_view line) { list.base_.insert(ascii_lower(line)); });
  return list;
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError(fmt::format("cannot read stopword file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void StopwordList::add_custom(std::string_view word) {
  auto w = ascii_lower(trim(word));
  if (!w.empty()) custom_.insert(std::move(w));
}

bool StopwordList::contains(std::string_view word) const {
  auto w = ascii_lower(word);
  return base_.contains(w) || custom_.contains(w);
}

std::size_t StopwordList::size() const {
  std::size_t n = base_.size();
  for (const auto& w : custom_) n += base_.contains(w) ? 0 : 1;
  return n;
}

const Lemmatizer& Lemmatizer::bundled() {
  static const Lemmatizer instance = parse(data::kLemmaRules);
  return instance;
}

Lemmatizer Lemmatizer::parse(std::string_view rules) {
  Lemmatizer lem;
  std::size_t n = 0;
  for_each_entry(rules, [&](std::string_view line) {
    ++n;
    if (line.front() == '!') {
      lem.exceptions_.insert(ascii_lower(trim(line.substr(1))));
      return;
    }
    std::istringstream fields{std::string(line)};
    Rule rule;
    std::string extra;
    if (!(fields >> rule.suffix >> rule.replacement >> rule.min_stem) || (fields >> extra)) {
      throw Error(fmt::format("lemma rule {}: expected '<suffix> <replacement> <min_stem>', got '{}'", n, line));
    }
    if (rule.replacement == "-") rule.replacement.clear();
    if (rule.replacement != rule.suffix && rule.replacement.size() >= rule.suffix.size()) {
      throw Error(fmt::format("lemma rule {} ('{}'): non-terminal rules must shorten the word", n, line));
    }
    lem.rules_.push_back(std::move(rule));
  });
  return lem;
}

std::string Lemmatizer::lemma(std::string_view word) const {
  std::string current(word);
  for (;;) {
    if (exceptions_.contains(current)) return current;
    const Rule* hit = nullptr;
    for (const auto& rule : rules_) {
      if (current.size() >= rule.suffix.size() + rule.min_stem && current.ends_with(rule.suffix)) {
        hit = &rule;
        break;
      }
    }
    if (hit == nullptr || hit->replacement == hit->suffix) return current;
    current.resize(current.size() - hit->suffix.size());
    current += hit->replacement;
  }
}

std::vector<std::string> preprocess(std::string_view text, const StopwordList& stopwords,
                                    const Lemmatizer& lemmatizer) {
  std::string cleaned = strip_urls(text);

  // Split on non-letters. ASCII letters are lowercased on the way; any other
  // letter marks the token as non-English.
  std::vector<std::string> tokens;
  std::string current;
  bool foreign = false;
  auto flush = [&] {
    if (!current.empty() && !foreign) {
      std::string lemma = lemmatizer.lemma(current);
      if (!stopwords.contains(current) && !stopwords.contains(lemma) && lemma.size() >= kMinTokenLength &&
          all_ascii_lower(lemma)) {
        tokens.push_back(std::move(lemma));
      }
    }
    current.clear();
    foreign = false;
  };

  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    char32_t c = decode_utf8(cleaned, pos);
    if (!is_letter(c)) {
      flush();
      continue;
    }
    if (c < 0x80) {
      current.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else {
      foreign = true;
      current.push_back('?');
    }
  }
  flush();
  return tokens;
}

}  // namespace influencer::corpus
