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

#include "kxdyn/matching.h"

#include <algorithm>
#include <string>

#include "kxdyn/error.h"

namespace kxdyn {
namespace {

// Compact adjacency over view positions 0..nodes.size()-1.
struct Csr {
  std::vector<int> offset;
  std::vector<int> adj;

  int size() const { return static_cast<int>(offset.size()) - 1; }
  int degree(int v) const { return offset[v + 1] - offset[v]; }
};

int position_of(const UndirectedView& view, NodeId id) {
  const auto it = std::lower_bound(view.nodes.begin(), view.nodes.end(), id);
  return static_cast<int>(it - view.nodes.begin());
}

template <typename Keep>
Csr build_csr(const UndirectedView& view, Keep keep) {
  const int n = static_cast<int>(view.nodes.size());
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(view.edges.size() * 2);
  for (std::size_t e = 0; e < view.edges.size(); ++e) {
    if (!keep(e)) continue;
    const int a = position_of(view, view.edges[e].first);
    const int b = position_of(view, view.edges[e].second);
    pairs.emplace_back(a, b);
    pairs.emplace_back(b, a);
  }
  std::sort(pairs.begin(), pairs.end());
  Csr g;
  g.offset.assign(n + 1, 0);
  g.adj.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    ++g.offset[a + 1];
    g.adj.push_back(b);
  }
  for (int v = 0; v < n; ++v) g.offset[v + 1] += g.offset[v];
  return g;
}

// Edmonds' algorithm, BFS variant. Work per search is proportional to the
// alternating tree it grows; a search that fails retires its whole
// (Hungarian) tree, since no later augmenting path can pass through it.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const Csr& g)
      : g_(g),
        n_(g.size()),
        mate_(n_, -1),
        parent_(n_, -1),
        base_(n_),
        used_(n_, 0),
        dead_(n_, 0),
        touch_stamp_(n_, 0),
        lca_stamp_(n_, 0),
        blossom_stamp_(n_, 0) {}

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] != -1) continue;
      for (int k = g_.offset[v]; k < g_.offset[v + 1]; ++k) {
        const int to = g_.adj[k];
        if (mate_[to] == -1) {
          mate_[v] = to;
          mate_[to] = v;
          break;
        }
      }
    }
    for (int root = 0; root < n_; ++root) {
      if (mate_[root] != -1 || dead_[root] || g_.degree(root) == 0) continue;
      const int end = find_path(root);
      if (end != -1) {
        augment(end);
      } else {
        for (int v : touched_) dead_[v] = 1;
      }
    }
    return mate_;
  }

 private:
  void touch(int v) {
    if (touch_stamp_[v] == search_) return;
    touch_stamp_[v] = search_;
    used_[v] = 0;
    parent_[v] = -1;
    base_[v] = v;
    touched_.push_back(v);
  }

  int lca(int a, int b) {
    ++lca_round_;
    while (true) {
      a = base_[a];
      lca_stamp_[a] = lca_round_;
      if (mate_[a] == -1) break;
      a = parent_[mate_[a]];
    }
    while (true) {
      b = base_[b];
      if (lca_stamp_[b] == lca_round_) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_stamp_[base_[v]] = blossom_round_;
      blossom_stamp_[base_[mate_[v]]] = blossom_round_;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  int find_path(int root) {
    ++search_;
    touched_.clear();
    queue_.clear();
    touch(root);
    used_[root] = 1;
    queue_.push_back(root);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int v = queue_[head];
      for (int k = g_.offset[v]; k < g_.offset[v + 1]; ++k) {
        const int to = g_.adj[k];
        if (dead_[to]) continue;
        touch(to);
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != -1 && touch_stamp_[mate_[to]] == search_ &&
                           parent_[mate_[to]] != -1)) {
          const int cur = lca(v, to);
          ++blossom_round_;
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          const std::size_t count = touched_.size();
          for (std::size_t i = 0; i < count; ++i) {
            const int u = touched_[i];
            if (blossom_stamp_[base_[u]] == blossom_round_) {
              base_[u] = cur;
              if (!used_[u]) {
                used_[u] = 1;
                queue_.push_back(u);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (mate_[to] == -1) return to;
          touch(mate_[to]);
          used_[mate_[to]] = 1;
          queue_.push_back(mate_[to]);
        }
      }
    }
    return -1;
  }

  void augment(int v) {
    while (v != -1) {
      const int pv = parent_[v];
      const int next = mate_[pv];
      mate_[v] = pv;
      mate_[pv] = v;
      v = next;
    }
  }

  const Csr& g_;
  int n_;
  std::vector<int> mate_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<char> used_;
  std::vector<char> dead_;
  std::vector<int> touch_stamp_;
  std::vector<int> lca_stamp_;
  std::vector<int> blossom_stamp_;
  std::vector<int> touched_;
  std::vector<int> queue_;
  int search_ = 0;
  int lca_round_ = 0;
  int blossom_round_ = 0;
};

Matching from_mates(const UndirectedView& view, const std::vector<int>& mate) {
  Matching m;
  for (std::size_t i = 0; i < mate.size(); ++i) {
    const int j = mate[i];
    if (j > static_cast<int>(i)) {
      m.edges.emplace_back(view.nodes[i], view.nodes[j]);
    }
  }
  return m;
}

template <typename Keep>
Matching max_matching_filtered(const UndirectedView& view, Keep keep) {
  const Csr g = build_csr(view, keep);
  BlossomMatcher matcher(g);
  return from_mates(view, matcher.solve());
}

class BruteForceMatcher {
 public:
  explicit BruteForceMatcher(const Csr& g)
      : g_(g), mate_(g.size(), -1), best_mate_(mate_) {}

  std::vector<int> solve() {
    search(0, 0);
    for (int& m : best_mate_) m = std::max(m, -1);
    return best_mate_;
  }

 private:
  static constexpr int kSingle = -2;  // decided to stay unmatched

  void search(int v, int size) {
    const int n = g_.size();
    while (v < n && (mate_[v] != -1 || g_.degree(v) == 0)) ++v;
    if (v == n) {
      if (size > best_size_) {
        best_size_ = size;
        best_mate_ = mate_;
      }
      return;
    }
    int open = 0;
    for (int u = v; u < n; ++u) open += mate_[u] == -1 && g_.degree(u) > 0;
    if (size + open / 2 <= best_size_) return;
    for (int k = g_.offset[v]; k < g_.offset[v + 1]; ++k) {
      const int w = g_.adj[k];
      if (mate_[w] != -1) continue;
      mate_[v] = w;
      mate_[w] = v;
      search(v + 1, size + 1);
      mate_[v] = -1;
      mate_[w] = -1;
    }
    mate_[v] = kSingle;
    search(v + 1, size);
    mate_[v] = -1;
  }

  const Csr& g_;
  std::vector<int> mate_;
  std::vector<int> best_mate_;
  int best_size_ = -1;
};

}  // namespace

std::vector<NodeId> Matching::matched_nodes() const {
  std::vector<NodeId> ids;
  ids.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Matching max_matching(const UndirectedView& view) {
  return max_matching_filtered(view, [](std::size_t) { return true; });
}

Matching brute_force_matching(const UndirectedView& view) {
  if (view.nodes.size() > kBruteForceMatchingLimit) {
    throw CapacityError("brute_force_matching: " +
                        std::to_string(view.nodes.size()) +
                        " nodes exceeds the limit of " +
                        std::to_string(kBruteForceMatchingLimit));
  }
  const Csr g = build_csr(view, [](std::size_t) { return true; });
  BruteForceMatcher matcher(g);
  return from_mates(view, matcher.solve());
}

Matching two_stage_matching(const UndirectedView& view) {
  Matching stage1 = max_matching_filtered(view, [&](std::size_t e) {
    return view.label(e) == EdgeLabel::kHL;
  });
  std::vector<char> covered(view.nodes.size(), 0);
  for (const auto& [a, b] : stage1.edges) {
    covered[position_of(view, a)] = 1;
    covered[position_of(view, b)] = 1;
  }
  Matching stage2 = max_matching_filtered(view, [&](std::size_t e) {
    const auto& [a, b] = view.edges[e];
    return view.label(e) == EdgeLabel::kLL && !covered[position_of(view, a)] &&
           !covered[position_of(view, b)];
  });
  Matching out;
  out.edges = std::move(stage1.edges);
  out.edges.insert(out.edges.end(), stage2.edges.begin(), stage2.edges.end());
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

Matching two_stage_matching(const GraphState& state) {
  return two_stage_matching(reduced_undirected(state, false));
}

UnmatchedCounts count_unmatched_by_type(const GraphState& state,
                                        const Matching& matching) {
  const std::vector<NodeId> covered = matching.matched_nodes();
  UnmatchedCounts counts;
  for (NodeId v : state.active_nodes()) {
    if (std::binary_search(covered.begin(), covered.end(), v)) continue;
    (state.type(v) == NodeType::kH ? counts.h : counts.l) += 1;
  }
  return counts;
}

bool is_valid_matching(const UndirectedView& view, const Matching& matching) {
  std::vector<NodeId> seen;
  for (const auto& e : matching.edges) {
    if (!std::binary_search(view.edges.begin(), view.edges.end(), e)) {
      return false;
    }
    seen.push_back(e.first);
    seen.push_back(e.second);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace kxdyn
