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
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "influencer/analysis.hpp"
#include "influencer/csv.hpp"

namespace influencer::analysis {

PriceSeries::PriceSeries(std::vector<SeriesPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].value > 0.0) || !std::isfinite(points_[i].value)) {
      throw Error(fmt::format("price on {} is not positive", format_day(points_[i].day)));
    }
    if (i > 0 && points_[i].day <= points_[i - 1].day) {
      throw Error(fmt::format("price days not strictly increasing at {}", format_day(points_[i].day)));
    }
  }
}

PriceSeries read_price_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::size_t line = 0;
  if (!reader.next(fields, line)) throw UserError("price file is empty");
  auto date_col = std::find(fields.begin(), fields.end(), "date") - fields.begin();
  auto close_col = std::find(fields.begin(), fields.end(), "close") - fields.begin();
  if (date_col == static_cast<std::ptrdiff_t>(fields.size()) || close_col == static_cast<std::ptrdiff_t>(fields.size())) {
    throw UserError("price file header must contain 'date' and 'close'");
  }
  const auto width = fields.size();

  std::vector<SeriesPoint> points;
  while (reader.next(fields, line)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != width) throw UserError(fmt::format("price file line {}: expected {} fields", line, width));
    SeriesPoint p;
    try {
      p.day = parse_day(fields[static_cast<std::size_t>(date_col)]);
    } catch (const Error& e) {
      throw UserError(fmt::format("price file line {}: {}", line, e.what()));
    }
    const auto& text = fields[static_cast<std::size_t>(close_col)];
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p.value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw UserError(fmt::format("price file line {}: bad close value '{}'", line, text));
    }
    points.push_back(p);
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.day < b.day; });
  try {
    return PriceSeries(std::move(points));
  } catch (const Error& e) {
    throw UserError(fmt::format("price file: {}", e.what()));
  }
}

PriceSeries read_price_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError(fmt::format("cannot read price file '{}'", path.string()));
  return read_price_csv(in);
}

std::vector<SeriesPoint> rolling_mean(std::span<const SeriesPoint> raw, int window_days) {
  if (window_days < 1) throw Error("rolling window must be at least one day");
  const std::chrono::days window{window_days};
  std::vector<SeriesPoint> out;
  out.reserve(raw.size());
  std::size_t begin = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    while (raw[begin].day <= raw[i].day - window) ++begin;
    // Summed afresh per window so the result carries no drift from a
    // running total.
    double sum = 0.0;
    for (std::size_t j = begin; j <= i; ++j) sum += raw[j].value;
    out.push_back({raw[i].day, sum / static_cast<double>(i - begin + 1)});
  }
  return out;
}

TopicTimeSeries topic_weight_series(const topics::TopicModel& model, std::span<const corpus::Document> docs,
                                    std::size_t topic, int window_days) {
  if (topic >= model.topic_count()) {
    throw Error(fmt::format("topic {} out of range (model has {})", topic, model.topic_count()));
  }
  if (window_days < 1) throw Error("rolling window must be at least one day");
  if (docs.size() != model.theta.rows()) throw Error("documents do not align with the model's theta rows");
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!model.doc_ids.empty() && model.doc_ids[d] != docs[d].doc_id) {
      throw Error(fmt::format("document {} is '{}' but the model expects '{}'", d, docs[d].doc_id, model.doc_ids[d]));
    }
  }

  std::map<Day, std::pair<double, std::size_t>> daily;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    auto& [sum, count] = daily[docs[d].date];
    sum += model.theta(d, topic);
    ++count;
  }

  TopicTimeSeries ts;
  ts.topic = topic;
  ts.window_days = window_days;
  ts.raw.reserve(daily.size());
  for (const auto& [day, acc] : daily) ts.raw.push_back({day, acc.first / static_cast<double>(acc.second)});
  ts.smoothed = rolling_mean(ts.raw, window_days);

  ts.scaled = ts.smoothed;
  if (!ts.scaled.empty()) {
    auto [lo, hi] = std::minmax_element(ts.scaled.begin(), ts.scaled.end(),
                                        [](const auto& a, const auto& b) { return a.value < b.value; });
    const double min = lo->value, range = hi->value - lo->value;
    // Window means of equal values can differ in the last bit; treat that as constant.
    const bool constant = range <= 1e-12 * std::max(1.0, std::abs(hi->value));
    for (auto& p : ts.scaled) p.value = constant ? 0.0 : (p.value - min) / range;
  }
  return ts;
}

std::vector<WindowCorrelation> windowed_correlation(const TopicTimeSeries& series, const PriceSeries& prices,
                                                    std::span<const DayWindow> windows) {
  std::map<Day, double> price_by_day;
  for (const auto& p : prices.points()) price_by_day.emplace(p.day, p.value);

  std::vector<WindowCorrelation> out;
  for (const auto& w : windows) {
    WindowCorrelation wc{w, series.topic, std::nullopt, {}};
    std::vector<double> x, y;
    for (const auto& p : series.smoothed) {
      if (p.day < w.start || p.day > w.end) continue;
      if (auto it = price_by_day.find(p.day); it != price_by_day.end()) {
        x.push_back(p.value);
        y.push_back(it->second);
      }
    }
    if (w.end < w.start) {
      wc.error = "window ends before it starts";
    } else if (x.size() < 3) {
      wc.error = fmt::format("insufficient overlap ({} shared days)", x.size());
    } else {
      try {
        wc.result = pearson_r(x, y);
      } catch (const Error& e) {
        wc.error = e.what();
      }
    }
    out.push_back(std::move(wc));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.window.start < b.window.start; });
  return out;
}

}  // namespace influencer::analysis
