// Copyright 2026 The kxdyn Authors
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

// Minimal SVG output: line charts and (c, rho) region rasters.

#ifndef KXDYN_CHART_H_
#define KXDYN_CHART_H_

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kxdyn/theory.h"

namespace kxdyn {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), drawn in order
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 420;
};

// One <polyline> per series. Throws std::invalid_argument("nonempty
// required") when there is no point to draw.
void emit_line_chart(std::ostream& out, std::span<const Series> series,
                     const ChartSpec& spec);

// One <rect> per satisfied grid cell over a light background.
void emit_region_chart(std::ostream& out, std::span<const RegionPoint> points,
                       const ChartSpec& spec);

// Line series from a results CSV: one series per n, matched_total averaged
// over trials against S_L.
std::vector<Series> series_from_results(std::istream& csv);

// Region points from a CSV with columns c,rho,lhs,satisfied.
std::vector<RegionPoint> region_from_csv(std::istream& csv);

}  // namespace kxdyn

#endif  // KXDYN_CHART_H_
