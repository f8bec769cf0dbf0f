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

#ifndef INFLUENCER_ANALYSIS_HPP_
#define INFLUENCER_ANALYSIS_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "influencer/common.hpp"
#include "influencer/corpus.hpp"
#include "influencer/topics.hpp"

namespace influencer::analysis {

/// (u . v) / (|u| |v|). Clamped to [0, 1] when both vectors are
/// non-negative, to [-1, 1] otherwise. Throws Error on a zero vector or a
/// length mismatch.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

struct TopicMatch {
  std::size_t community_topic = 0;
  std::size_t best_group_topic = 0;
  double similarity = 0.0;
};

struct SimilarityReport {
  std::vector<TopicMatch> per_topic;
  double average = 0.0;

  nlohmann::json to_json() const;
};

/// For each community topic, the group topic with the most similar
/// topic-word row (several community topics may pick the same group topic).
/// Throws Error when the vocabularies differ.
SimilarityReport group_similarity(const topics::TopicModel& community, const topics::TopicModel& group);

/// How much larger the majority percentage is, as a factor:
/// maj_pct / op_pct - 1. Throws Error when op_pct is not positive.
double relative_difference(double op_pct, double maj_pct);

struct SeriesPoint {
  Day day;
  double value = 0.0;

  bool operator==(const SeriesPoint&) const = default;
};

/// Daily closing prices, strictly increasing days, positive prices.
class PriceSeries {
 public:
  PriceSeries() = default;
  /// Throws Error when days are not strictly increasing or a price is not
  /// positive.
  explicit PriceSeries(std::vector<SeriesPoint> points);

  const std::vector<SeriesPoint>& points() const { return points_; }

 private:
  std::vector<SeriesPoint> points_;
};

/// Reads "date,close" CSV (header required). Rows are sorted by date;
/// duplicate days or bad values throw UserError.
PriceSeries read_price_csv(std::istream& in);
PriceSeries read_price_csv(const std::filesystem::path& path);

struct TopicTimeSeries {
  std::size_t topic = 0;
  int window_days = 60;
  /// Mean document weight per day that has documents.
  std::vector<SeriesPoint> raw;
  /// Trailing mean over raw values whose day lies in (t - window_days, t].
  std::vector<SeriesPoint> smoothed;
  /// smoothed, min-max scaled to [0, 1]; a constant series maps to 0. For
  /// plotting only.
  std::vector<SeriesPoint> scaled;
};

/// Daily weight of one topic over `docs`, which must be the model's
/// documents in theta order. Throws Error for a bad topic index, window or
/// misaligned documents.
TopicTimeSeries topic_weight_series(const topics::TopicModel& model, std::span<const corpus::Document> docs,
                                    std::size_t topic, int window_days = 60);

/// Trailing calendar-window mean; days without a value are skipped.
std::vector<SeriesPoint> rolling_mean(std::span<const SeriesPoint> raw, int window_days);

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Sample Pearson r with a two-tailed p-value from Student's t with n - 2
/// degrees of freedom. Throws Error for n < 3, a length mismatch, or a
/// constant series ("zero variance").
CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y);

/// Regularised incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, double df);

/// Inclusive range of days.
struct DayWindow {
  Day start;
  Day end;

  bool operator==(const DayWindow&) const = default;
};

struct WindowCorrelation {
  DayWindow window;
  std::size_t topic = 0;
  std::optional<CorrelationResult> result;
  /// Set when result is empty.
  std::string error;
};

/// Joins the smoothed topic series with prices on day inside each window
/// and correlates the pairs. Windows that cannot be evaluated get an error
/// entry; the rest are still computed. Output is sorted by window start.
std::vector<WindowCorrelation> windowed_correlation(const TopicTimeSeries& series, const PriceSeries& prices,
                                                    std::span<const DayWindow> windows);

}  // namespace influencer::analysis

#endif  // INFLUENCER_ANALYSIS_HPP_
