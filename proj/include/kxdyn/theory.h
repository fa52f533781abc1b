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

// Closed-form quantities and counting oracles for the random pool model.

#ifndef KXDYN_THEORY_H_
#define KXDYN_THEORY_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "kxdyn/graph.h"
#include "kxdyn/matching.h"
#include "kxdyn/stats.h"

namespace kxdyn {

// Margin by which waiting for L pairs helps three-cycle chunk matching:
//   (1-p)(1-rho) c e^{-c(1+2 rho)}
//     - p (1 - e^{-c rho}) (1 - c (1-rho) e^{-c} - e^{-c(1-rho)}).
// Throws std::domain_error unless c > 0 and rho, p lie in [0, 1].
double condition_lhs(double c, double rho, double p);

struct RegionPoint {
  double c = 0.0;
  double rho = 0.0;
  double lhs = 0.0;
  bool satisfied = false;  // lhs >= delta
};

// c in {0.05, 0.10, ..., 5.00} and rho in {0.00, 0.01, ..., 1.00}.
std::vector<double> default_c_grid();
std::vector<double> default_rho_grid();

// One point per (c, rho) cell, c-major. Grids must be nonempty and strictly
// increasing (std::invalid_argument otherwise).
std::vector<RegionPoint> region_scan(double p, double delta,
                                     std::span<const double> c_grid,
                                     std::span<const double> rho_grid);

// Columns c,rho,lhs,satisfied.
void write_region_csv(std::ostream& out, std::span<const RegionPoint> points);

// d^2 e^{-3d} min(1, d/2)^3 / 48. Throws std::domain_error for d <= 0.
double delta_half_bound(double d);

// Upper bound on the expected number of pairs left unmatched at time t by
// online greedy matching when every arc has probability p_high:
//   1 + (1 - q - q (t-1) (1-q)^t) / q^2,  q = p_high^2.
// Throws std::domain_error unless 0 < p_high <= 1 and t >= 2.
double residual_bound(double p_high, int t);

struct ResidualStats {
  int t = 0;
  int unmatched = 0;
  double bound = 0.0;
};

// Unmatched pairs after online greedy matching (two-cycles, after every
// arrival) on a pool where every arc has probability p_high.
ResidualStats online_residual(double p_high, int n, std::uint64_t seed);

// Undirected G(n, prob) with all nodes typed L; ids 0..n-1.
UndirectedView erdos_renyi(int n, double prob, std::uint64_t seed);

// Maximum matching size / n over `trials` draws of G(n, d/n). Needs
// trials >= 2 and d in [0, n].
Summary estimate_alpha(double d, int n, int trials, std::uint64_t seed);

// Fraction of G(nu, xi) draws with a perfect matching. Throws
// std::invalid_argument for odd nu or trials < 1.
double er_perfect_matching_rate(int nu, double xi, int trials,
                                std::uint64_t seed);

// Augmenting paths w1 - v1 = v2 - w2 with v1 = v2 a matched edge inside
// `matched_set` and w1 != w2 both in `free_set`. Each path is counted once,
// irrespective of direction.
std::int64_t count_simple_aug_paths(const UndirectedView& view,
                                    const Matching& matching,
                                    std::span<const NodeId> matched_set,
                                    std::span<const NodeId> free_set);

// Four-node patterns j' - i = i' - j where i is matched to i', both i' and
// j' arrived before i, j arrived after i, and j, j' are unmatched. Arrival
// order is node id order unless `arrival` (parallel to view.nodes) is given.
std::int64_t count_pi_paths(const UndirectedView& view, const Matching& matching,
                            std::span<const int> arrival = {});

}  // namespace kxdyn

#endif  // KXDYN_THEORY_H_
