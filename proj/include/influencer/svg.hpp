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

#ifndef INFLUENCER_SVG_HPP_
#define INFLUENCER_SVG_HPP_

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace influencer::svg {

struct LineSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Tick label for an x value; defaults to the shortest decimal form.
  std::function<std::string(double)> x_tick;
};

/// Standalone SVG document with one polyline per series and a legend.
std::string line_chart(const Axes& axes, std::span<const LineSeries> series);

struct BarGroup {
  std::string label;
  /// One bar per series name, same order.
  std::vector<double> values;
};

/// Grouped bars; the y axis starts at zero.
std::string bar_chart(const Axes& axes, std::span<const std::string> series_names, std::span<const BarGroup> groups);

}  // namespace influencer::svg

#endif  // INFLUENCER_SVG_HPP_
