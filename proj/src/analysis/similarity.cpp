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
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "influencer/analysis.hpp"

namespace influencer::analysis {

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(fmt::format("vector lengths differ ({} vs {})", u.size(), v.size()));
  double dot = 0.0, uu = 0.0, vv = 0.0;
  bool non_negative = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    non_negative = non_negative && u[i] >= 0.0 && v[i] >= 0.0;
  }
  if (uu == 0.0 || vv == 0.0) throw Error("cosine similarity of a zero vector");
  // sqrt(uu * vv) makes identical vectors score exactly 1.
  const double norm2 = uu * vv;
  const double norm = std::isnormal(norm2) ? std::sqrt(norm2) : std::sqrt(uu) * std::sqrt(vv);
  const double c = dot / norm;
  return std::clamp(c, non_negative ? 0.0 : -1.0, 1.0);
}

SimilarityReport group_similarity(const topics::TopicModel& community, const topics::TopicModel& group) {
  if (!(community.vocabulary == group.vocabulary)) {
    throw Error("topic models were trained on different vocabularies");
  }
  if (community.topic_count() == 0 || group.topic_count() == 0) throw Error("topic model has no topics");

  SimilarityReport report;
  for (std::size_t k = 0; k < community.topic_count(); ++k) {
    TopicMatch best{k, 0, -1.0};
    for (std::size_t j = 0; j < group.topic_count(); ++j) {
      double s = cosine_similarity(community.phi.row(k), group.phi.row(j));
      if (s > best.similarity) {
        best.best_group_topic = j;
        best.similarity = s;
      }
    }
    report.per_topic.push_back(best);
  }
  double sum = 0.0;
  for (const auto& m : report.per_topic) sum += m.similarity;
  report.average = sum / static_cast<double>(report.per_topic.size());
  return report;
}

nlohmann::json SimilarityReport::to_json() const {
  nlohmann::json topics = nlohmann::json::array();
  for (const auto& m : per_topic) {
    topics.push_back({{"community_topic", m.community_topic},
                      {"best_group_topic", m.best_group_topic},
                      {"similarity", m.similarity}});
  }
  return {{"per_topic", std::move(topics)}, {"average", average}};
}

double relative_difference(double op_pct, double maj_pct) {
  if (!(op_pct > 0.0)) throw Error("relative difference undefined for a zero opinion-leader percentage");
  return maj_pct / op_pct - 1.0;
}

}  // namespace influencer::analysis
