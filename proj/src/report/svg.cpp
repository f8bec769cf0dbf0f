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

#include "influencer/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace influencer::svg {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 450.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;
constexpr std::string_view kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                         "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string_view color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string tick_label(double v) {
  if (v != 0.0 && (std::abs(v) < 1e-3 || std::abs(v) >= 1e5)) return fmt::format("{:.2e}", v);
  return fmt::format("{:.4g}", v);
}

class Canvas {
 public:
  Canvas(const Axes& axes, Range x, Range y) : axes_(axes), x_(x), y_(y) {
    x_.widen();
    y_.widen();
    out_ += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{3}</text>\n",
        kWidth, kHeight, (kLeft + kWidth - kRight) / 2.0, escape(axes.title));
  }

  double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

  void frame(bool x_ticks) {
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    out_ += fmt::format("<g stroke=\"black\" stroke-width=\"1\">\n<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n"
                        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\"/>\n</g>\n",
                        x0, y0, x1, y1);
    out_ += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= kTicks; ++i) {
      const double v = y_.lo + (y_.hi - y_.lo) * i / kTicks;
      out_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", x0 - 6.0, py(v) + 4.0,
                          escape(tick_label(v)));
    }
    if (x_ticks) {
      for (int i = 0; i <= kTicks; ++i) {
        const double v = x_.lo + (x_.hi - x_.lo) * i / kTicks;
        const auto label = axes_.x_tick ? axes_.x_tick(v) : tick_label(v);
        out_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", px(v), y0 + 18.0,
                            escape(label));
      }
    }
    out_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", (x0 + x1) / 2.0,
                        kHeight - 16.0, escape(axes_.x_label));
    out_ += fmt::format("<text transform=\"translate(18,{:.2f}) rotate(-90)\" text-anchor=\"middle\">{}</text>\n",
                        (y0 + y1) / 2.0, escape(axes_.y_label));
    out_ += "</g>\n";
  }

  void legend(std::span<const std::string> names) {
    out_ += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      const double y = kTop + 18.0 * static_cast<double>(i);
      out_ += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
                          kWidth - kRight + 16.0, y, color(i));
      out_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kWidth - kRight + 34.0, y + 10.0,
                          escape(names[i]));
    }
    out_ += "</g>\n";
  }

  std::string& body() { return out_; }
  std::string finish() { return std::move(out_) + "</svg>\n"; }

 private:
  const Axes& axes_;
  Range x_;
  Range y_;
  std::string out_;
};

}  // namespace

std::string line_chart(const Axes& axes, std::span<const LineSeries> series) {
  Range x{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  Range y = x;
  for (const auto& s : series) {
    for (const auto& [px, py] : s.points) {
      x.lo = std::min(x.lo, px);
      x.hi = std::max(x.hi, px);
      y.lo = std::min(y.lo, py);
      y.hi = std::max(y.hi, py);
    }
  }
  if (x.lo > x.hi) x = Range{};
  if (y.lo > y.hi) y = Range{};

  Canvas canvas(axes, x, y);
  canvas.frame(true);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < series.size(); ++i) {
    names.push_back(series[i].name);
    if (series[i].points.empty()) continue;
    auto& out = canvas.body();
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"", color(i));
    for (std::size_t j = 0; j < series[i].points.size(); ++j) {
      const auto& [px, py] = series[i].points[j];
      out += fmt::format("{}{:.2f},{:.2f}", j ? " " : "", canvas.px(px), canvas.py(py));
    }
    out += "\"/>\n";
  }
  canvas.legend(names);
  return canvas.finish();
}

std::string bar_chart(const Axes& axes, std::span<const std::string> series_names, std::span<const BarGroup> groups) {
  Range y{0.0, 0.0};
  for (const auto& g : groups) {
    for (double v : g.values) y.hi = std::max(y.hi, v);
  }
  if (y.hi <= 0.0) y.hi = 1.0;
  const double n = static_cast<double>(std::max<std::size_t>(groups.size(), 1));
  Canvas canvas(axes, Range{0.0, n}, y);
  canvas.frame(false);

  auto& out = canvas.body();
  const double slot = canvas.px(1.0) - canvas.px(0.0);
  const double bars = static_cast<double>(std::max<std::size_t>(series_names.size(), 1));
  const double bar_width = slot * 0.8 / bars;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double left = canvas.px(static_cast<double>(g)) + slot * 0.1;
    for (std::size_t s = 0; s < groups[g].values.size(); ++s) {
      const double top = canvas.py(groups[g].values[s]);
      out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                         left + bar_width * static_cast<double>(s), top, bar_width, canvas.py(0.0) - top, color(s));
    }
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        canvas.px(static_cast<double>(g) + 0.5), canvas.py(0.0) + 18.0, escape(groups[g].label));
  }
  canvas.legend(series_names);
  return canvas.finish();
}

}  // namespace influencer::svg
