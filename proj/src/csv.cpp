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

#include "influencer/csv.hpp"

#include <fmt/format.h>

#include "influencer/common.hpp"

namespace influencer::csv {

bool Reader::next(std::vector<std::string>& fields, std::size_t& first_line) {
  fields.clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++line_;
  first_line = line_;

  std::string field;
  bool quoted = false;
  bool at_field_start = true;
  for (;;) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == '"' && at_field_start) {
        quoted = true;
        at_field_start = false;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        at_field_start = true;
      } else {
        field.push_back(c);
        at_field_start = false;
      }
    }
    if (!quoted) break;
    // Quoted field continues on the next physical line.
    if (!std::getline(in_, line)) {
      throw Error(fmt::format("unterminated quoted field starting on line {}", first_line));
    }
    ++line_;
    field.push_back('\n');
  }
  fields.push_back(std::move(field));
  return true;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace influencer::csv
