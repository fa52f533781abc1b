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

#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "kxdyn/error.h"
#include "kxdyn/matching.h"
#include "kxdyn/stats.h"
#include "kxdyn/theory.h"
#include "oracles.h"

namespace kxdyn {
namespace {

// True iff some simple alternating path joins two free vertices.
bool has_augmenting_path(const UndirectedView& v, const Matching& m) {
  const int n = static_cast<int>(v.nodes.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : v.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> mate(n, -1);
  for (const auto& [a, b] : m.edges) {
    mate[a] = b;
    mate[b] = a;
  }
  std::vector<char> on(n, 0);
  // At u having arrived through a matched edge (or at the start); next step
  // uses a non-matching edge.
  auto walk = [&](auto&& self, int u) -> bool {
    for (int w : adj[u]) {
      if (on[w] || mate[u] == w) continue;
      if (mate[w] == -1) return true;
      const int x = mate[w];
      if (on[x]) continue;
      on[w] = on[x] = 1;
      if (self(self, x)) return true;
      on[w] = on[x] = 0;
    }
    return false;
  };
  for (int s = 0; s < n; ++s) {
    if (mate[s] != -1) continue;
    std::fill(on.begin(), on.end(), 0);
    on[s] = 1;
    if (walk(walk, s)) return true;
  }
  return false;
}

TEST(MaxMatching, Paths) {
  EXPECT_EQ(max_matching(make_view(3, {{0, 1}, {1, 2}})).size(), 1u);
  EXPECT_EQ(max_matching(make_view(4, {{0, 1}, {1, 2}, {2, 3}})).size(), 2u);
}

TEST(MaxMatching, OddCycleAndEmpty) {
  EXPECT_EQ(max_matching(make_view(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}))
                .size(),
            2u);
  EXPECT_EQ(max_matching(make_view(0, {})).size(), 0u);
  EXPECT_EQ(max_matching(make_view(6, {})).size(), 0u);
}

TEST(MaxMatching, NeedsBlossomContraction) {
  // Triangle 0-1-2 with tails 2-3 and 0-4 plus 1-5; greedy-first start
  // matches (0,1),(2,3) and must shrink the triangle to reach 4/5.
  const UndirectedView v =
      make_view(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 4}, {1, 5}});
  EXPECT_EQ(max_matching(v).size(), 3u);
}

TEST(MaxMatching, EqualsSubsetOracleOnSmallGraphs) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const UndirectedView v = random_view(rng, n, 0.4);
    const Matching m = max_matching(v);
    ASSERT_TRUE(is_valid_matching(v, m));
    ASSERT_EQ(static_cast<int>(m.size()), subset_oracle(v)) << "instance " << i;
  }
}

TEST(MaxMatching, NoAugmentingPathUpToFiftyNodes) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const int n = 20 + static_cast<int>(rng() % 31);
    const UndirectedView v = random_view(rng, n, 2.5 / n);
    const Matching m = max_matching(v);
    ASSERT_TRUE(is_valid_matching(v, m));
    ASSERT_FALSE(has_augmenting_path(v, m)) << "instance " << i;
  }
}

TEST(MaxMatching, AgreesWithBruteForceUpTo24Nodes) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const int n = 12 + static_cast<int>(rng() % 13);
    const UndirectedView v = random_view(rng, n, 3.0 / n);
    const Matching bf = brute_force_matching(v);
    ASSERT_TRUE(is_valid_matching(v, bf));
    ASSERT_EQ(max_matching(v).size(), bf.size()) << "instance " << i;
  }
}

TEST(MaxMatching, Deterministic) {
  std::mt19937_64 rng(5);
  const UndirectedView v = random_view(rng, 300, 3.0 / 300);
  EXPECT_EQ(max_matching(v).edges, max_matching(v).edges);
}

TEST(MaxMatching, LargeSparseGraphMatchesAlphaRange) {
  const UndirectedView v = erdos_renyi(20000, 2.0 / 20000, 3);
  const Matching m = max_matching(v);
  EXPECT_TRUE(is_valid_matching(v, m));
  const double frac = static_cast<double>(m.size()) / 20000;
  EXPECT_GT(frac, 0.35);
  EXPECT_LT(frac, 0.45);
}

TEST(BruteForce, SmallCases) {
  EXPECT_EQ(brute_force_matching(make_view(0, {})).size(), 0u);
  EXPECT_EQ(brute_force_matching(
                make_view(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}))
                .size(),
            2u);
  EXPECT_EQ(brute_force_matching(make_view(
                5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}}))
                .size(),
            2u);
}

TEST(BruteForce, CapacityLimit) {
  EXPECT_THROW(brute_force_matching(make_view(25, {})), CapacityError);
}

constexpr NodeType H = NodeType::kH;
constexpr NodeType L = NodeType::kL;

TEST(TwoStage, Examples) {
  // H1=0, L1=1, L2=2.
  const UndirectedView v = make_view(3, {{0, 1}, {1, 2}}, {H, L, L});
  EXPECT_EQ(two_stage_matching(v).edges, (std::vector<Edge>{{0, 1}}));
  const UndirectedView w = make_view(2, {{0, 1}}, {L, L});
  EXPECT_EQ(two_stage_matching(w).edges, (std::vector<Edge>{{0, 1}}));
  const UndirectedView hh = make_view(2, {{0, 1}}, {H, H});
  EXPECT_EQ(two_stage_matching(hh).size(), 0u);
}

TEST(TwoStage, NeverExceedsMaximum) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(rng() % 11);
    UndirectedView v = random_view(rng, n, 0.35);
    for (auto& t : v.types) t = rng() % 2 ? H : L;
    const Matching m = two_stage_matching(v);
    ASSERT_TRUE(is_valid_matching(v, m));
    ASSERT_LE(static_cast<int>(m.size()), subset_oracle(v));
  }
}

TEST(CountUnmatched, Examples) {
  GraphState g = GraphState::scripted(
      {H, H, H, L, L}, {{1, 4}, {4, 1}});
  while (!g.finished()) g.arrive_node();
  EXPECT_EQ(count_unmatched_by_type(g, Matching{}), (UnmatchedCounts{3, 2}));
  EXPECT_EQ(count_unmatched_by_type(g, Matching{{{0, 3}}}),
            (UnmatchedCounts{2, 1}));

  GraphState p = GraphState::scripted({H, L}, {{1, 2}, {2, 1}});
  while (!p.finished()) p.arrive_node();
  EXPECT_EQ(count_unmatched_by_type(p, max_matching(reduced_undirected(p, false))),
            (UnmatchedCounts{0, 0}));

  GraphState q = GraphState::scripted({H, H, L, L}, {{1, 3}, {3, 1}});
  while (!q.finished()) q.arrive_node();
  EXPECT_EQ(count_unmatched_by_type(q, Matching{{{0, 2}}}),
            (UnmatchedCounts{1, 1}));
}

}  // namespace
}  // namespace kxdyn
