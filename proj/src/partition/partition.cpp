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

#include "influencer/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace influencer::partition {
namespace {

std::vector<std::size_t> descending_order(const graph::HitsScores& scores) {
  std::vector<std::size_t> order(scores.nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores.authority[a] != scores.authority[b]) return scores.authority[a] > scores.authority[b];
    return scores.nodes[a] < scores.nodes[b];
  });
  return order;
}

}  // namespace

bool Partition::is_leader(std::string_view user) const {
  return std::find(leaders.begin(), leaders.end(), user) != leaders.end();
}

std::unordered_set<std::string> Partition::leader_set() const { return {leaders.begin(), leaders.end()}; }

Partition partition_by_authority(const graph::HitsScores& scores, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(fmt::format("threshold {} outside (0, 1]", threshold));
  }
  if (scores.nodes.empty()) throw Error("cannot partition an empty score map");
  if (scores.authority.size() != scores.nodes.size()) throw Error("authority vector does not match nodes");

  long double total = 0.0L;
  for (double a : scores.authority) {
    if (a < 0.0 || !std::isfinite(a)) throw Error("authority scores must be finite and non-negative");
    total += a;
  }
  if (total <= 0.0L) throw Error("degenerate authority distribution");

  const auto order = descending_order(scores);
  std::size_t cut = order.size();
  long double cumulative = 0.0L;
  if (threshold < 1.0) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      cumulative += scores.authority[order[i]];
      if (static_cast<double>(cumulative / total) >= threshold - kShareTolerance) {
        cut = i + 1;
        break;
      }
    }
  } else {
    cumulative = total;
  }

  Partition p;
  p.threshold = threshold;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < cut ? p.leaders : p.majority).push_back(scores.nodes[order[i]]);
  }
  std::sort(p.majority.begin(), p.majority.end());
  p.leader_authority_share = static_cast<double>(cumulative / total);
  p.leader_fraction = static_cast<double>(cut) / static_cast<double>(order.size());
  return p;
}

double round4(double value) { return std::round(value * 1e4) / 1e4; }

PartitionStats partition_stats(const Partition& partition, const graph::HitsScores& scores) {
  PartitionStats s;
  s.n_leaders = partition.leaders.size();
  s.n_majority = partition.majority.size();
  const std::size_t n = s.n_leaders + s.n_majority;
  s.leader_fraction = n ? static_cast<double>(s.n_leaders) / static_cast<double>(n) : 0.0;

  long double total = 0.0L, leaders = 0.0L;
  const auto leader_set = partition.leader_set();
  for (std::size_t i = 0; i < scores.nodes.size(); ++i) {
    total += scores.authority[i];
    if (leader_set.contains(scores.nodes[i])) leaders += scores.authority[i];
  }
  s.leader_authority_share = total > 0.0L ? static_cast<double>(leaders / total) : 0.0;
  return s;
}

nlohmann::json PartitionStats::to_json() const {
  return {{"n_leaders", n_leaders},
          {"n_majority", n_majority},
          {"leader_fraction", round4(leader_fraction)},
          {"leader_authority_share", round4(leader_authority_share)}};
}

std::vector<DistributionPoint> authority_distribution(const graph::HitsScores& scores) {
  const auto order = descending_order(scores);
  std::vector<DistributionPoint> out;
  out.reserve(order.size());
  constexpr double kFloor = std::numeric_limits<double>::min();
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    double a = scores.authority[order[rank]];
    out.push_back({rank, a, std::log10(std::max(a, kFloor))});
  }
  return out;
}

}  // namespace influencer::partition
