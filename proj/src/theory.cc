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

#include "kxdyn/theory.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kxdyn/policies.h"
#include "kxdyn/random.h"

namespace kxdyn {
namespace {

constexpr std::uint64_t kErTag = 0x45524772617068ULL;

void check_grid(std::span<const double> grid, const char* name) {
  if (grid.empty()) {
    throw std::invalid_argument(std::string(name) + " grid is empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(name) +
                                  " grid is not strictly increasing");
    }
  }
}

std::vector<double> steps(int count, double step) {
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) grid.push_back(i * step);
  return grid;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

double condition_lhs(double c, double rho, double p) {
  if (!(c > 0.0)) throw std::domain_error("condition_lhs: c must be positive");
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::domain_error("condition_lhs: rho must lie in [0, 1]");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("condition_lhs: p must lie in [0, 1]");
  }
  const double gain = (1.0 - p) * (1.0 - rho) * c * std::exp(-c * (1.0 + 2.0 * rho));
  const double loss = p * -std::expm1(-c * rho) *
                      (-std::expm1(-c * (1.0 - rho)) - c * (1.0 - rho) * std::exp(-c));
  return gain - loss;
}

std::vector<double> default_c_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(i * 0.05);
  return grid;
}

std::vector<double> default_rho_grid() { return steps(101, 0.01); }

std::vector<RegionPoint> region_scan(double p, double delta,
                                     std::span<const double> c_grid,
                                     std::span<const double> rho_grid) {
  check_grid(c_grid, "c");
  check_grid(rho_grid, "rho");
  std::vector<RegionPoint> points;
  points.reserve(c_grid.size() * rho_grid.size());
  for (double c : c_grid) {
    for (double rho : rho_grid) {
      const double lhs = condition_lhs(c, rho, p);
      points.push_back(RegionPoint{c, rho, lhs, lhs >= delta});
    }
  }
  return points;
}

void write_region_csv(std::ostream& out, std::span<const RegionPoint> points) {
  out << "c,rho,lhs,satisfied\n";
  for (const RegionPoint& pt : points) {
    out << shortest(pt.c) << ',' << shortest(pt.rho) << ',' << shortest(pt.lhs)
        << ',' << (pt.satisfied ? 1 : 0) << '\n';
  }
}

double delta_half_bound(double d) {
  if (!(d > 0.0)) throw std::domain_error("delta_half_bound: d must be positive");
  const double m = std::min(1.0, d / 2.0);
  return d * d * std::exp(-3.0 * d) * m * m * m / 48.0;
}

double residual_bound(double p_high, int t) {
  if (!(p_high > 0.0 && p_high <= 1.0)) {
    throw std::domain_error("residual_bound: p_high must lie in (0, 1]");
  }
  if (t < 2) throw std::domain_error("residual_bound: t must be at least 2");
  const double q = p_high * p_high;
  const double tail = q * (t - 1) * std::pow(1.0 - q, t);
  return 1.0 + (1.0 - q - tail) / (q * q);
}

ResidualStats online_residual(double p_high, int n, std::uint64_t seed) {
  ModelParams params;
  params.n = n;
  params.rho = 1.0;
  params.c = p_high * n;
  params.sigma = 0.0;
  params.p = 1.0;
  PolicySpec spec;
  RunOptions options;
  options.record_periods = false;
  const TrialTrace trace = run_policy(params, spec, seed, options);
  return ResidualStats{n, n - trace.matched_total, residual_bound(p_high, n)};
}

UndirectedView erdos_renyi(int n, double prob, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("erdos_renyi: negative size");
  UndirectedView view;
  view.nodes.resize(n);
  for (int i = 0; i < n; ++i) view.nodes[i] = i;
  view.types.assign(n, NodeType::kL);
  const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  Stream rng(hash_words({kErTag, seed}));
  std::int64_t pos = -1;
  int row = 0;
  std::int64_t row_start = 0;  // pair index of (row, row + 1)
  while (true) {
    pos += rng.geometric_skip(prob, total) + 1;
    if (pos >= total) break;
    while (pos >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    view.edges.emplace_back(row, row + 1 + static_cast<int>(pos - row_start));
  }
  return view;
}

Summary estimate_alpha(double d, int n, int trials, std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("estimate_alpha: trials < 2");
  if (n < 1 || d < 0.0 || d > n) {
    throw std::invalid_argument("estimate_alpha: need n >= 1 and 0 <= d <= n");
  }
  std::vector<double> fractions;
  for (int i = 0; i < trials; ++i) {
    const UndirectedView g = erdos_renyi(n, d / n, derive_seed(seed, i));
    fractions.push_back(static_cast<double>(max_matching(g).size()) / n);
  }
  return summarize(fractions);
}

double er_perfect_matching_rate(int nu, double xi, int trials,
                                std::uint64_t seed) {
  if (nu < 0 || nu % 2 != 0) {
    throw std::invalid_argument("er_perfect_matching_rate: nu=" +
                                std::to_string(nu) +
                                " is odd, no perfect matching exists");
  }
  if (trials < 1) throw std::invalid_argument("er_perfect_matching_rate: trials < 1");
  int hits = 0;
  for (int i = 0; i < trials; ++i) {
    const UndirectedView g = erdos_renyi(nu, xi, derive_seed(seed, i));
    hits += static_cast<int>(max_matching(g).size()) * 2 == nu;
  }
  return static_cast<double>(hits) / trials;
}

std::int64_t count_simple_aug_paths(const UndirectedView& view,
                                    const Matching& matching,
                                    std::span<const NodeId> matched_set,
                                    std::span<const NodeId> free_set) {
  std::vector<NodeId> inner(matched_set.begin(), matched_set.end());
  std::vector<NodeId> outer(free_set.begin(), free_set.end());
  std::sort(inner.begin(), inner.end());
  std::sort(outer.begin(), outer.end());
  auto in = [](const std::vector<NodeId>& s, NodeId v) {
    return std::binary_search(s.begin(), s.end(), v);
  };
  auto free_neighbours = [&](NodeId v) {
    std::vector<NodeId> out;
    for (const auto& [a, b] : view.edges) {
      if (a == v && in(outer, b)) out.push_back(b);
      if (b == v && in(outer, a)) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::int64_t count = 0;
  for (const auto& [a, b] : matching.edges) {
    if (!in(inner, a) || !in(inner, b)) continue;
    const std::vector<NodeId> na = free_neighbours(a);
    const std::vector<NodeId> nb = free_neighbours(b);
    std::vector<NodeId> both;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                          std::back_inserter(both));
    count += static_cast<std::int64_t>(na.size()) *
                 static_cast<std::int64_t>(nb.size()) -
             static_cast<std::int64_t>(both.size());
  }
  return count;
}

std::int64_t count_pi_paths(const UndirectedView& view, const Matching& matching,
                            std::span<const int> arrival) {
  const std::size_t n = view.nodes.size();
  if (!arrival.empty() && arrival.size() != n) {
    throw std::invalid_argument("count_pi_paths: arrival size mismatch");
  }
  auto pos = [&](NodeId v) {
    return static_cast<std::size_t>(
        std::lower_bound(view.nodes.begin(), view.nodes.end(), v) -
        view.nodes.begin());
  };
  auto when = [&](std::size_t i) {
    return arrival.empty() ? static_cast<std::int64_t>(view.nodes[i])
                           : static_cast<std::int64_t>(arrival[i]);
  };
  std::vector<int> mate(n, -1);
  for (const auto& [a, b] : matching.edges) {
    mate[pos(a)] = static_cast<int>(pos(b));
    mate[pos(b)] = static_cast<int>(pos(a));
  }
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : view.edges) {
    adj[pos(a)].push_back(pos(b));
    adj[pos(b)].push_back(pos(a));
  }
  std::int64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mate[i] < 0) continue;
    const std::size_t partner = static_cast<std::size_t>(mate[i]);
    if (when(partner) >= when(i)) continue;
    std::int64_t earlier = 0;
    std::int64_t later = 0;
    for (std::size_t j : adj[i]) earlier += mate[j] < 0 && when(j) < when(i);
    for (std::size_t j : adj[partner]) later += mate[j] < 0 && when(j) > when(i);
    count += earlier * later;
  }
  return count;
}

}  // namespace kxdyn
