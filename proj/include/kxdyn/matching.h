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

#ifndef KXDYN_MATCHING_H_
#define KXDYN_MATCHING_H_

#include <utility>
#include <vector>

#include "kxdyn/graph.h"

namespace kxdyn {

// Disjoint two-cycles, stored as undirected edges.
struct Matching {
  std::vector<std::pair<NodeId, NodeId>> edges;  // first < second, ascending

  std::size_t size() const { return edges.size(); }
  std::vector<NodeId> matched_nodes() const;
};

// Maximum-cardinality matching on a general graph (Edmonds' blossom
// contraction, one BFS per free vertex after a greedy start).
//
// Ties between maximum matchings are broken deterministically: the greedy
// start and the augmenting searches take free vertices in ascending id and
// scan neighbours in ascending id.
Matching max_matching(const UndirectedView& view);

inline constexpr std::size_t kBruteForceMatchingLimit = 24;

// Exhaustive search with a cardinality bound. Throws CapacityError above
// kBruteForceMatchingLimit nodes.
Matching brute_force_matching(const UndirectedView& view);

// Maximum matching of the H-L edges, then a maximum matching of the L-L
// edges among L nodes left free. H-H edges are never used.
Matching two_stage_matching(const UndirectedView& view);
Matching two_stage_matching(const GraphState& state);

struct UnmatchedCounts {
  int h = 0;
  int l = 0;
  friend bool operator==(const UnmatchedCounts&,
                         const UnmatchedCounts&) = default;
};

// Active pairs of each type not covered by `matching`.
UnmatchedCounts count_unmatched_by_type(const GraphState& state,
                                        const Matching& matching);

// True iff every edge is in the view and no node is covered twice.
bool is_valid_matching(const UndirectedView& view, const Matching& matching);

}  // namespace kxdyn

#endif  // KXDYN_MATCHING_H_
