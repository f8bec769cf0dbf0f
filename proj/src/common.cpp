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

#include "influencer/common.hpp"

#include <cctype>
#include <optional>

#include <fmt/format.h>

namespace influencer {
namespace {

using namespace std::chrono;

// Reads exactly `width` digits starting at `pos`.
std::optional<int> read_digits(std::string_view text, std::size_t pos, std::size_t width) {
  if (pos + width > text.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

std::optional<Day> read_day(std::string_view text) {
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = read_digits(text, 0, 4);
  auto m = read_digits(text, 5, 2);
  auto d = read_digits(text, 8, 2);
  if (!y || !m || !d) return std::nullopt;
  year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

}  // namespace

Day parse_day(std::string_view text) {
  auto day = read_day(text);
  if (!day || text.size() != 10) throw Error(fmt::format("invalid date '{}', expected YYYY-MM-DD", text));
  return *day;
}

Timestamp parse_timestamp(std::string_view text) {
  auto fail = [&] { return Error(fmt::format("invalid ISO 8601 timestamp '{}'", text)); };
  auto date = read_day(text);
  if (!date) throw fail();
  if (text.size() == 10) return Timestamp{*date};
  if (text[10] != 'T' && text[10] != ' ') throw fail();

  auto hh = read_digits(text, 11, 2);
  auto mm = read_digits(text, 14, 2);
  if (!hh || !mm || text.size() < 16 || text[13] != ':') throw fail();
  int ss = 0;
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    auto s = read_digits(text, pos + 1, 2);
    if (!s) throw fail();
    ss = *s;
    pos += 3;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw fail();
    }
  }
  if (*hh > 23 || *mm > 59 || ss > 60) throw fail();

  seconds offset{0};
  if (pos < text.size()) {
    char c = text[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      auto oh = read_digits(text, pos + 1, 2);
      std::optional<int> om;
      std::size_t end = pos + 3;
      if (end < text.size() && text[end] == ':') {
        om = read_digits(text, end + 1, 2);
        end += 3;
      } else {
        om = read_digits(text, end, 2);
        end += 2;
      }
      if (!oh || !om || *oh > 23 || *om > 59) throw fail();
      offset = hours{*oh} + minutes{*om};
      if (c == '-') offset = -offset;
      pos = end;
    }
  }
  if (pos != text.size()) throw fail();
  return Timestamp{*date} + hours{*hh} + minutes{*mm} + seconds{ss} - offset;
}

std::string format_day(Day d) {
  year_month_day ymd{d};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string format_timestamp(Timestamp ts) {
  auto d = day_of(ts);
  hh_mm_ss<seconds> tod{ts - d};
  return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", format_day(d), tod.hours().count(),
                     tod.minutes().count(), tod.seconds().count());
}

}  // namespace influencer
