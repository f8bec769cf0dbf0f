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

#ifndef INFLUENCER_CSV_HPP_
#define INFLUENCER_CSV_HPP_

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace influencer::csv {

/// Streaming RFC 4180 reader: comma separated, '"' quoting with '""' escapes,
/// quoted fields may span lines. Accepts both LF and CRLF line endings.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  /// `first_line` receives the 1-based line on which the record starts.
  /// Throws influencer::Error on an unterminated quoted field.
  bool next(std::vector<std::string>& fields, std::size_t& first_line);

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Quotes `field` when it contains a comma, quote or line break.
std::string escape(std::string_view field);

/// Joins escaped fields with commas (no trailing newline).
std::string join(const std::vector<std::string>& fields);

}  // namespace influencer::csv

#endif  // INFLUENCER_CSV_HPP_
