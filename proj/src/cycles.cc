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

#include "kxdyn/cycles.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "kxdyn/error.h"

namespace kxdyn {
namespace {

Cycle make_cycle(const GraphState& state, std::initializer_list<NodeId> ids) {
  Cycle c;
  c.length = static_cast<int>(ids.size());
  std::copy(ids.begin(), ids.end(), c.nodes.begin());
  const auto first = std::min_element(c.nodes.begin(), c.nodes.begin() + c.length);
  std::rotate(c.nodes.begin(), first, c.nodes.begin() + c.length);
  for (int i = 0; i < c.length; ++i) {
    if (state.type(c.nodes[i]) == NodeType::kH) {
      ++c.high_count;
      c.high_mask |= static_cast<std::uint8_t>(1u << i);
    }
  }
  return c;
}

void check_max_len(int max_len) {
  if (max_len != 2 && max_len != 3) {
    throw std::invalid_argument("cycle length cap must be 2 or 3, got " +
                                std::to_string(max_len));
  }
}

void finish(std::vector<Cycle>& cycles, bool exclude_all_low) {
  if (exclude_all_low) {
    std::erase_if(cycles, [](const Cycle& c) { return c.high_count == 0; });
  }
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
}

// Weighted node packing on one connected block of overlapping cycles.
class PackingSearch {
 public:
  static constexpr std::int64_t kNodeBudget = 5'000'000;

  PackingSearch(std::vector<std::vector<int>> members,
                std::vector<std::int64_t> weight,
                std::vector<std::vector<int>> cycles_of, std::vector<int> order)
      : members_(std::move(members)),
        weight_(std::move(weight)),
        cycles_of_(std::move(cycles_of)),
        order_(std::move(order)),
        state_(weight_.size(), kFree) {}

  std::vector<int> solve() {
    dfs(0, 0);
    return best_;
  }

 private:
  enum : char { kFree, kCovered, kExcluded };

  bool available(int cycle) const {
    for (int v : members_[cycle]) {
      if (state_[v] != kFree) return false;
    }
    return true;
  }

  bool coverable(int v) const {
    if (state_[v] != kFree) return false;
    for (int c : cycles_of_[v]) {
      if (available(c)) return true;
    }
    return false;
  }

  std::int64_t cycle_weight(int cycle) const {
    std::int64_t w = 0;
    for (int v : members_[cycle]) w += weight_[v];
    return w;
  }

  void dfs(std::size_t pos, std::int64_t value) {
    if (++expanded_ > kNodeBudget) {
      throw CapacityError("max_cycle_packing: search budget of " +
                          std::to_string(kNodeBudget) + " nodes exhausted on " +
                          std::to_string(members_.size()) + " cycles");
    }
    while (pos < order_.size() && !coverable(order_[pos])) ++pos;
    if (pos == order_.size()) {
      if (value > best_value_) {
        best_value_ = value;
        best_ = chosen_;
      }
      return;
    }
    std::int64_t bound = value;
    for (std::size_t i = pos; i < order_.size(); ++i) {
      if (coverable(order_[i])) bound += weight_[order_[i]];
    }
    if (bound <= best_value_) return;

    const int x = order_[pos];
    for (int c : cycles_of_[x]) {
      if (!available(c)) continue;
      for (int v : members_[c]) state_[v] = kCovered;
      chosen_.push_back(c);
      dfs(pos + 1, value + cycle_weight(c));
      chosen_.pop_back();
      for (int v : members_[c]) state_[v] = kFree;
    }
    state_[x] = kExcluded;
    dfs(pos + 1, value);
    state_[x] = kFree;
  }

  std::vector<std::vector<int>> members_;
  std::vector<std::int64_t> weight_;
  std::vector<std::vector<int>> cycles_of_;
  std::vector<int> order_;
  std::vector<char> state_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  std::int64_t best_value_ = -1;
  std::int64_t expanded_ = 0;
};

CycleSet collect(std::span<const Cycle> cycles, std::vector<int> picked) {
  std::sort(picked.begin(), picked.end());
  CycleSet out;
  for (int i : picked) {
    out.cycles.push_back(cycles[i]);
    out.matched_nodes += cycles[i].length;
    out.matched_h += cycles[i].high_count;
  }
  return out;
}

}  // namespace

std::vector<NodeId> CycleSet::matched_ids() const {
  std::vector<NodeId> ids;
  for (const Cycle& c : cycles) {
    for (NodeId v : c.members()) ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<Cycle> enumerate_cycles(const GraphState& state, int max_len,
                                    bool exclude_all_low) {
  check_max_len(max_len);
  std::vector<Cycle> cycles;
  for (NodeId u : state.active_nodes()) {
    for (NodeId v : state.mutual(u)) {
      if (u < v) cycles.push_back(make_cycle(state, {u, v}));
    }
    if (max_len < 3) continue;
    for (NodeId v : state.out_arcs(u)) {
      if (v < u) continue;
      for (NodeId w : state.out_arcs(v)) {
        if (w > u && w != v && state.has_arc(w, u)) {
          cycles.push_back(make_cycle(state, {u, v, w}));
        }
      }
    }
  }
  finish(cycles, exclude_all_low);
  return cycles;
}

std::vector<Cycle> enumerate_cycles_through(const GraphState& state,
                                            std::span<const NodeId> seeds,
                                            int max_len, bool exclude_all_low) {
  check_max_len(max_len);
  std::vector<Cycle> cycles;
  for (NodeId s : seeds) {
    if (!state.is_active(s)) continue;
    for (NodeId v : state.mutual(s)) cycles.push_back(make_cycle(state, {s, v}));
    if (max_len < 3) continue;
    for (NodeId v : state.out_arcs(s)) {
      for (NodeId w : state.out_arcs(v)) {
        if (w != s && state.has_arc(w, s)) {
          cycles.push_back(make_cycle(state, {s, v, w}));
        }
      }
    }
  }
  finish(cycles, exclude_all_low);
  return cycles;
}

CycleSet max_cycle_packing(std::span<const Cycle> cycles,
                           PackingObjective objective) {
  if (cycles.size() > kMaxPackingCycles) {
    throw CapacityError("max_cycle_packing: " + std::to_string(cycles.size()) +
                        " cycles exceeds the limit of " +
                        std::to_string(kMaxPackingCycles));
  }
  // Compact node index and cycle-overlap components (union-find on nodes).
  std::unordered_map<NodeId, int> index;
  for (const Cycle& c : cycles) {
    for (int i = 0; i < c.length; ++i) {
      index.emplace(c.nodes[i], static_cast<int>(index.size()));
    }
  }
  const int node_total = static_cast<int>(index.size());
  std::vector<int> parent(node_total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Cycle& c : cycles) {
    const int a = index.at(c.nodes[0]);
    for (int i = 1; i < c.length; ++i) parent[find(index.at(c.nodes[i]))] = find(a);
  }
  std::vector<std::vector<int>> block_cycles(node_total);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    block_cycles[find(index.at(cycles[i].nodes[0]))].push_back(static_cast<int>(i));
  }

  std::vector<int> picked;
  for (const std::vector<int>& block : block_cycles) {
    if (block.empty()) continue;
    std::vector<NodeId> ids;
    std::vector<char> is_high;
    std::unordered_map<NodeId, int> local;
    std::vector<std::vector<int>> members;
    for (int ci : block) {
      const Cycle& c = cycles[ci];
      std::vector<int> m;
      for (int i = 0; i < c.length; ++i) {
        auto [it, fresh] = local.emplace(c.nodes[i], static_cast<int>(ids.size()));
        if (fresh) {
          ids.push_back(c.nodes[i]);
          is_high.push_back((c.high_mask >> i) & 1u);
        }
        m.push_back(it->second);
      }
      members.push_back(std::move(m));
    }
    const int nodes = static_cast<int>(ids.size());
    std::vector<std::vector<int>> cycles_of(nodes);
    for (int k = 0; k < static_cast<int>(members.size()); ++k) {
      for (int v : members[k]) cycles_of[v].push_back(k);
    }
    std::vector<std::int64_t> weight(nodes, 1);
    if (objective == PackingObjective::kHighFirst) {
      for (int v = 0; v < nodes; ++v) {
        if (is_high[v]) weight[v] = nodes + 1;
      }
    }
    std::vector<int> order(nodes);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (weight[a] != weight[b]) return weight[a] > weight[b];
      return ids[a] < ids[b];
    });
    PackingSearch search(std::move(members), std::move(weight),
                         std::move(cycles_of), std::move(order));
    for (int k : search.solve()) picked.push_back(block[k]);
  }
  return collect(cycles, std::move(picked));
}

CycleSet brute_force_packing(std::span<const Cycle> cycles,
                             PackingObjective objective) {
  if (cycles.size() > kBruteForcePackingLimit) {
    throw CapacityError("brute_force_packing: " + std::to_string(cycles.size()) +
                        " cycles exceeds the limit of " +
                        std::to_string(kBruteForcePackingLimit));
  }
  const std::uint32_t m = static_cast<std::uint32_t>(cycles.size());
  std::uint32_t best_mask = 0;
  std::pair<int, int> best_key{-1, -1};
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<NodeId> used;
    int total = 0;
    int high = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (NodeId v : cycles[i].members()) used.push_back(v);
      total += cycles[i].length;
      high += cycles[i].high_count;
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) continue;
    const std::pair<int, int> key = objective == PackingObjective::kHighFirst
                                        ? std::pair{high, total}
                                        : std::pair{total, 0};
    if (key > best_key) {
      best_key = key;
      best_mask = mask;
    }
  }
  std::vector<int> picked;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (best_mask >> i & 1u) picked.push_back(static_cast<int>(i));
  }
  return collect(cycles, std::move(picked));
}

std::int64_t count_short_cycles(const GraphState& state, int k) {
  check_max_len(k);
  std::int64_t count = 0;
  for (const Cycle& c : enumerate_cycles(state, k, false)) count += c.length == k;
  return count;
}

bool is_valid_cycle_set(const GraphState& state, const CycleSet& set) {
  std::vector<NodeId> seen;
  for (const Cycle& c : set.cycles) {
    if (c.length != 2 && c.length != 3) return false;
    for (int i = 0; i < c.length; ++i) {
      if (!state.has_arc(c.nodes[i], c.nodes[(i + 1) % c.length])) return false;
      seen.push_back(c.nodes[i]);
    }
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace kxdyn
