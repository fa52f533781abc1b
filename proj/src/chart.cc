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

#include "kxdyn/chart.h"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kxdyn/harness.h"

namespace kxdyn {
namespace {

constexpr int kMargin = 56;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::map<std::string, std::size_t> header_index(std::istream& csv) {
  std::string line;
  if (!std::getline(csv, line)) throw std::invalid_argument("csv: missing header");
  std::map<std::string, std::size_t> index;
  const std::vector<std::string> cells = split(line);
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
  return index;
}

std::size_t column(const std::map<std::string, std::size_t>& index,
                   const std::string& name) {
  const auto it = index.find(name);
  if (it == index.end()) throw std::invalid_argument("csv: missing column " + name);
  return it->second;
}

void open_svg(std::ostream& out, const ChartSpec& spec) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
      << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-size=\"14\">" << escape(spec.title) << "</text>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 8
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(spec.x_label)
      << "</text>\n";
  out << "<text x=\"14\" y=\"" << spec.height / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
      << spec.height / 2 << ")\">" << escape(spec.y_label) << "</text>\n";
}

}  // namespace

void emit_line_chart(std::ostream& out, std::span<const Series> series,
                     const ChartSpec& spec) {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool any = false;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!any) {
        x0 = x1 = x;
        y0 = y1 = y;
        any = true;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!any) throw std::invalid_argument("nonempty required");
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double w = spec.width - 2.0 * kMargin;
  const double h = spec.height - 2.0 * kMargin;
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * w; };
  auto py = [&](double y) { return spec.height - kMargin - (y - y0) / (y1 - y0) * h; };

  open_svg(out, spec);
  out << "<g stroke=\"black\" font-size=\"10\">\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << spec.height - kMargin
      << "\" x2=\"" << spec.width - kMargin << "\" y2=\"" << spec.height - kMargin
      << "\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << spec.height - kMargin << "\"/>\n";
  out << "</g>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << spec.height - kMargin + 14
      << "\" font-size=\"10\">" << format_number(x0) << "</text>\n";
  out << "<text x=\"" << spec.width - kMargin << "\" y=\""
      << spec.height - kMargin + 14 << "\" font-size=\"10\" text-anchor=\"end\">"
      << format_number(x1) << "</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << spec.height - kMargin
      << "\" font-size=\"10\" text-anchor=\"end\">" << format_number(y0)
      << "</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 4
      << "\" font-size=\"10\" text-anchor=\"end\">" << format_number(y1)
      << "</text>\n";
  std::size_t colour = 0;
  for (const Series& s : series) {
    if (s.points.empty()) continue;
    const char* stroke = kPalette[colour++ % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      out << (i ? " " : "") << format_number(px(s.points[i].first)) << ','
          << format_number(py(s.points[i].second));
    }
    out << "\"><title>" << escape(s.name) << "</title></polyline>\n";
    out << "<text x=\"" << spec.width - kMargin + 4 << "\" y=\""
        << kMargin + 14 * static_cast<int>(colour) << "\" font-size=\"10\" fill=\""
        << stroke << "\">" << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_region_chart(std::ostream& out, std::span<const RegionPoint> points,
                       const ChartSpec& spec) {
  if (points.empty()) throw std::invalid_argument("nonempty required");
  std::vector<double> cs;
  std::vector<double> rhos;
  for (const RegionPoint& p : points) {
    cs.push_back(p.c);
    rhos.push_back(p.rho);
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::sort(rhos.begin(), rhos.end());
  rhos.erase(std::unique(rhos.begin(), rhos.end()), rhos.end());
  const double w = (spec.width - 2.0 * kMargin) / cs.size();
  const double h = (spec.height - 2.0 * kMargin) / rhos.size();

  open_svg(out, spec);
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << spec.width - 2 * kMargin << "\" height=\"" << spec.height - 2 * kMargin
      << "\" fill=\"#eeeeee\" stroke=\"black\"/>\n";
  for (const RegionPoint& p : points) {
    if (!p.satisfied) continue;
    const auto ci = std::lower_bound(cs.begin(), cs.end(), p.c) - cs.begin();
    const auto ri = std::lower_bound(rhos.begin(), rhos.end(), p.rho) - rhos.begin();
    const double x = kMargin + ci * w;
    const double y = spec.height - kMargin - (ri + 1) * h;
    out << "<rect x=\"" << format_number(x) << "\" y=\"" << format_number(y)
        << "\" width=\"" << format_number(w) << "\" height=\"" << format_number(h)
        << "\" fill=\"#1f77b4\"/>\n";
  }
  out << "<text x=\"" << kMargin << "\" y=\"" << spec.height - kMargin + 14
      << "\" font-size=\"10\">" << format_number(cs.front()) << "</text>\n";
  out << "<text x=\"" << spec.width - kMargin << "\" y=\""
      << spec.height - kMargin + 14 << "\" font-size=\"10\" text-anchor=\"end\">"
      << format_number(cs.back()) << "</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << spec.height - kMargin
      << "\" font-size=\"10\" text-anchor=\"end\">" << format_number(rhos.front())
      << "</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 4
      << "\" font-size=\"10\" text-anchor=\"end\">" << format_number(rhos.back())
      << "</text>\n";
  out << "</svg>\n";
}

std::vector<Series> series_from_results(std::istream& csv) {
  const auto index = header_index(csv);
  const std::size_t n_col = column(index, "n");
  const std::size_t scheme_col = column(index, "scheme");
  const std::size_t sl_col = column(index, "S_L");
  const std::size_t m_col = column(index, "matched_total");
  // (scheme, n) -> S_L -> (sum, count)
  std::map<std::pair<std::string, int>, std::map<int, std::pair<double, int>>> acc;
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() <= m_col || cells[m_col] == "NA") continue;
    auto& cell = acc[{cells[scheme_col], std::stoi(cells[n_col])}]
                    [std::stoi(cells[sl_col])];
    cell.first += std::stod(cells[m_col]);
    cell.second += 1;
  }
  std::vector<Series> out;
  for (const auto& [key, by_s] : acc) {
    Series s;
    s.name = key.first + " n=" + std::to_string(key.second);
    for (const auto& [sl, sum] : by_s) {
      s.points.emplace_back(sl, sum.first / sum.second);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<RegionPoint> region_from_csv(std::istream& csv) {
  const auto index = header_index(csv);
  const std::size_t c_col = column(index, "c");
  const std::size_t rho_col = column(index, "rho");
  const std::size_t lhs_col = column(index, "lhs");
  const std::size_t sat_col = column(index, "satisfied");
  std::vector<RegionPoint> points;
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    points.push_back(RegionPoint{std::stod(cells.at(c_col)),
                                 std::stod(cells.at(rho_col)),
                                 std::stod(cells.at(lhs_col)),
                                 cells.at(sat_col) == "1"});
  }
  return points;
}

}  // namespace kxdyn
