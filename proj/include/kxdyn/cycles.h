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

#ifndef KXDYN_CYCLES_H_
#define KXDYN_CYCLES_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "kxdyn/graph.h"

namespace kxdyn {

// Directed exchange cycle of length 2 or 3, rotated so that the smallest id
// comes first: nodes[0] -> nodes[1] (-> nodes[2]) -> nodes[0].
struct Cycle {
  std::array<NodeId, 3> nodes{kNoNode, kNoNode, kNoNode};
  int length = 0;
  int high_count = 0;
  std::uint8_t high_mask = 0;  // bit i set iff nodes[i] is H

  std::span<const NodeId> members() const {
    return {nodes.data(), static_cast<std::size_t>(length)};
  }
  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle& a, const Cycle& b) {
    return a.nodes <=> b.nodes;
  }
};

enum class PackingObjective {
  kTotal,      // maximize matched nodes
  kHighFirst,  // maximize matched H nodes, then matched nodes
};

struct CycleSet {
  std::vector<Cycle> cycles;
  int matched_nodes = 0;
  int matched_h = 0;

  std::vector<NodeId> matched_ids() const;
};

// Directed 2-cycles and, when max_len is 3, 3-cycles among active pairs,
// in ascending canonical order. With exclude_all_low, cycles made only of L
// nodes are dropped.
std::vector<Cycle> enumerate_cycles(const GraphState& state, int max_len,
                                    bool exclude_all_low);

// Same, restricted to cycles through at least one active node of `seeds`.
std::vector<Cycle> enumerate_cycles_through(const GraphState& state,
                                            std::span<const NodeId> seeds,
                                            int max_len, bool exclude_all_low);

inline constexpr std::size_t kMaxPackingCycles = 10000;

// Exact vertex-disjoint packing maximizing `objective`, by branch and bound
// over each connected component of the cycle-overlap structure. Among optima
// the first one reached is returned; branches take cycles in input order.
// Throws CapacityError above kMaxPackingCycles cycles or when the search
// budget runs out.
CycleSet max_cycle_packing(std::span<const Cycle> cycles,
                           PackingObjective objective);

inline constexpr std::size_t kBruteForcePackingLimit = 20;

// Exhaustive search over all subsets. Throws CapacityError above
// kBruteForcePackingLimit cycles.
CycleSet brute_force_packing(std::span<const Cycle> cycles,
                             PackingObjective objective);

// Number of directed cycles of length exactly k (2 or 3) among active pairs.
std::int64_t count_short_cycles(const GraphState& state, int k);

// Structural check: cycles disjoint, arcs present, lengths in {2, 3}.
bool is_valid_cycle_set(const GraphState& state, const CycleSet& set);

}  // namespace kxdyn

#endif  // KXDYN_CYCLES_H_
