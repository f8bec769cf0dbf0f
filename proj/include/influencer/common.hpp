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

#ifndef INFLUENCER_COMMON_HPP_
#define INFLUENCER_COMMON_HPP_

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>

namespace influencer {

/// Version tag written into every cached artifact. Readers refuse artifacts
/// carrying any other value.
inline constexpr std::string_view kSchemaVersion = "influencer-topics/1";

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A failure caused by user input: bad configuration, a missing or unreadable
/// input file, malformed data, or a stale artifact. The CLI maps these to
/// exit code 2.
class UserError : public Error {
 public:
  using Error::Error;
};

using Day = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

/// Parses an ISO 8601 timestamp such as "2018-01-02T03:04:05Z",
/// "2018-01-02T03:04:05.123+01:00" or "2018-01-02 03:04:05" (no offset means
/// UTC). Throws Error on anything else.
Timestamp parse_timestamp(std::string_view text);

/// Parses a calendar day "YYYY-MM-DD".
Day parse_day(std::string_view text);

std::string format_day(Day day);
std::string format_timestamp(Timestamp ts);

inline Day day_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

}  // namespace influencer

#endif  // INFLUENCER_COMMON_HPP_
