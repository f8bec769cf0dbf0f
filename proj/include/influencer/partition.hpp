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

#ifndef INFLUENCER_PARTITION_HPP_
#define INFLUENCER_PARTITION_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/graph.hpp"

namespace influencer::partition {

/// Opinion leaders versus majority users.
struct Partition {
  /// Descending authority, ties by user id.
  std::vector<std::string> leaders;
  /// Sorted by user id.
  std::vector<std::string> majority;
  double threshold = 0.8;
  double leader_authority_share = 0.0;
  double leader_fraction = 0.0;

  bool is_leader(std::string_view user) const;
  std::unordered_set<std::string> leader_set() const;
};

/// Cumulative shares within this distance below the threshold count as
/// reaching it. Without it, ten users of authority 0.1 would need nine
/// leaders to reach 0.8 because 0.1 * 8 rounds below 0.8.
inline constexpr double kShareTolerance = 1e-12;

/// Sorts users by authority (descending, ties by user id ascending) and takes
/// the smallest prefix whose share of total authority reaches `threshold`.
/// threshold = 1 puts every user in the leader group. Throws Error when
/// threshold is outside (0, 1], scores are empty, or every authority is zero.
Partition partition_by_authority(const graph::HitsScores& scores, double threshold = 0.8);

struct PartitionStats {
  std::size_t n_leaders = 0;
  std::size_t n_majority = 0;
  double leader_fraction = 0.0;
  double leader_authority_share = 0.0;

  /// Fractions rounded to 4 decimal places.
  nlohmann::json to_json() const;
};

PartitionStats partition_stats(const Partition& partition, const graph::HitsScores& scores);

/// Rounds to 4 decimal places, the precision used in reports.
double round4(double value);

struct DistributionPoint {
  std::size_t rank = 0;
  double authority = 0.0;
  /// log10(authority), zeros floored at the smallest normal double.
  double log10_authority = 0.0;
};

/// Authorities sorted in descending order with their rank, for plotting.
std::vector<DistributionPoint> authority_distribution(const graph::HitsScores& scores);

}  // namespace influencer::partition

#endif  // INFLUENCER_PARTITION_HPP_
