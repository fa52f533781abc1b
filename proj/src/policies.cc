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

#include "kxdyn/policies.h"

#include <algorithm>
#include <string>

#include "kxdyn/cycles.h"
#include "kxdyn/error.h"
#include "kxdyn/matching.h"

namespace kxdyn {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kCm2:
      return "CM2";
    case Scheme::kCm3:
      return "CM3";
    case Scheme::kOnlineChain:
      return "ONLINE_CHAIN";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "CM2") return Scheme::kCm2;
  if (name == "CM3") return Scheme::kCm3;
  if (name == "ONLINE_CHAIN") return Scheme::kOnlineChain;
  throw SpecError("unknown scheme '" + std::string(name) +
                  "' (expected CM2, CM3 or ONLINE_CHAIN)");
}

void PolicySpec::validate(int n) const {
  if (scheme == Scheme::kOnlineChain) {
    if (k != 2 && k != 3) {
      throw SpecError("online scheme needs k in {2, 3}, got " +
                      std::to_string(k));
    }
    return;
  }
  if (s_high < 1 || s_low < 1) {
    throw SpecError("waiting periods must be positive: S_H=" +
                    std::to_string(s_high) + " S_L=" + std::to_string(s_low));
  }
  if (s_low % s_high != 0) {
    throw SpecError("S_H=" + std::to_string(s_high) + " does not divide S_L=" +
                    std::to_string(s_low));
  }
  if (s_low > n) {
    throw SpecError("S_L=" + std::to_string(s_low) + " exceeds n=" +
                    std::to_string(n));
  }
}

std::string PolicySpec::describe() const {
  if (scheme == Scheme::kOnlineChain) {
    return std::string(with_chain ? "O^c_" : "O_") + std::to_string(k);
  }
  return std::string(scheme_name(scheme)) + "(" + std::to_string(s_high) + "," +
         std::to_string(s_low) + ")";
}

namespace {

class Runner {
 public:
  Runner(GraphState& state, const PolicySpec& spec, const RunOptions& options)
      : state_(state), spec_(spec), options_(options) {
    trace_.policy = spec;
    if (options_.record_periods) {
      trace_.periods.reserve(static_cast<std::size_t>(state.horizon()));
    }
  }

  TrialTrace run() {
    if (state_.arrivals() != 0) {
      throw StateError("run_policy needs a pool with no arrivals yet");
    }
    spec_.validate(state_.horizon());
    if (spec_.scheme == Scheme::kOnlineChain) {
      run_online();
    } else {
      run_chunks();
    }
    return std::move(trace_);
  }

 private:
  void count(std::span<const NodeId> ids) {
    for (NodeId v : ids) {
      ++trace_.matched_total;
      (state_.type(v) == NodeType::kH ? trace_.matched_h : trace_.matched_l) += 1;
    }
  }

  void remove_and_count(std::span<const NodeId> ids) {
    state_.remove_matched(ids);
    count(ids);
  }

  void notify(Phase phase, int t) {
    if (options_.after_phase) options_.after_phase(state_, phase, t);
  }

  void record(int t) {
    if (!options_.record_periods) return;
    trace_.periods.push_back(PeriodRecord{t, state_.arrivals(),
                                          trace_.matched_total,
                                          trace_.matched_h, trace_.matched_l,
                                          state_.active_count()});
  }

  // Residual pools never keep a matchable structure between phases, so only
  // the parts of the pool reachable from nodes that arrived since the last
  // phase of the same kind can change.
  void clear_pairs(bool ignore_ll, std::span<const NodeId> fresh) {
    const UndirectedView view = reduced_component_view(state_, ignore_ll, fresh);
    remove_and_count(max_matching(view).matched_nodes());
  }

  void clear_cycles(bool ignore_ll, std::span<const NodeId> fresh) {
    const std::vector<Cycle> cycles =
        enumerate_cycles_through(state_, fresh, 3, ignore_ll);
    const CycleSet packed = max_cycle_packing(
        cycles, ignore_ll ? PackingObjective::kHighFirst : PackingObjective::kTotal);
    remove_and_count(packed.matched_ids());
  }

  void run_chunks() {
    const int n = state_.horizon();
    const bool cycles = spec_.scheme == Scheme::kCm3;
    std::vector<NodeId> since_priority;
    std::vector<NodeId> since_full;
    for (int t = 1; t <= n; ++t) {
      const NodeId id = state_.arrive_node();
      since_priority.push_back(id);
      since_full.push_back(id);
      const int block_start = spec_.s_low * ((t - 1) / spec_.s_low);
      const bool full = t % spec_.s_low == 0 || t == n;
      const bool priority = (t - block_start) % spec_.s_high == 0 || full;
      if (priority) {
        cycles ? clear_cycles(true, since_priority)
               : clear_pairs(true, since_priority);
        since_priority.clear();
        notify(Phase::kPriority, t);
      }
      if (full) {
        cycles ? clear_cycles(false, since_full) : clear_pairs(false, since_full);
        since_full.clear();
        notify(Phase::kFull, t);
      }
      record(t);
    }
  }

  void run_online() {
    NodeId bridge = kNoNode;
    if (spec_.with_chain) {
      if (state_.ndd_ids().size() != 1) {
        throw SpecError("a chain needs exactly one non-directed donor, pool has " +
                        std::to_string(state_.ndd_ids().size()));
      }
      bridge = state_.ndd_ids()[0];
    }
    const int n = state_.horizon();
    for (int t = 1; t <= n; ++t) {
      const NodeId id = state_.arrive_node();
      const NodeId seeds[] = {id};
      const std::vector<Cycle> cycles =
          enumerate_cycles_through(state_, seeds, spec_.k, false);
      const Cycle* best = nullptr;
      for (const Cycle& c : cycles) {
        if (best == nullptr || c.high_count > best->high_count ||
            (c.high_count == best->high_count && c.length > best->length)) {
          best = &c;
        }
      }
      std::vector<NodeId> path;
      if (bridge != kNoNode && state_.has_arc(bridge, id)) {
        path = best_chain_extension(state_, id);
      }
      const bool cycle_first =
          best != nullptr && (path.empty() || best->high_count >= spec_.k - 1);
      if (cycle_first) {
        remove_and_count(best->members());
      } else if (!path.empty()) {
        state_.retire_donor(bridge);
        const std::span<const NodeId> all(path);
        remove_and_count(all.first(all.size() - 1));
        state_.make_bridge_donor(path.back());
        count(all.last(1));
        bridge = path.back();
        trace_.chain_segments.push_back(std::move(path));
      }
      notify(Phase::kOnline, t);
      record(t);
    }
  }

  GraphState& state_;
  const PolicySpec& spec_;
  const RunOptions& options_;
  TrialTrace trace_;
};

}  // namespace

std::vector<NodeId> best_chain_extension(const GraphState& state, NodeId start) {
  std::vector<NodeId> best;
  if (!state.is_active(start)) return best;
  std::vector<char> on_path(state.node_count(), 0);
  struct Frame {
    NodeId node;
    const std::vector<NodeId>* next;
    std::size_t cursor;
    int scored;  // length up to the last H node on the path so far
  };
  std::vector<Frame> stack;
  auto push = [&](NodeId v) {
    const int depth = static_cast<int>(stack.size()) + 1;
    const int prev = stack.empty() ? 0 : stack.back().scored;
    const int scored = state.type(v) == NodeType::kH ? depth : prev;
    on_path[v] = 1;
    stack.push_back(Frame{v, &state.out_arcs(v), 0, scored});
    if (scored > static_cast<int>(best.size())) {
      best.clear();
      for (int i = 0; i < scored; ++i) best.push_back(stack[i].node);
    }
  };
  push(start);
  std::int64_t expansions = 0;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.cursor == top.next->size()) {
      on_path[top.node] = 0;
      stack.pop_back();
      continue;
    }
    const NodeId v = (*top.next)[top.cursor++];
    if (on_path[v]) continue;
    if (++expansions > kChainSearchBudget) break;
    push(v);
  }
  return best;
}

TrialTrace run_policy(GraphState& state, const PolicySpec& spec,
                      const RunOptions& options) {
  return Runner(state, spec, options).run();
}

TrialTrace run_policy(const ModelParams& params, const PolicySpec& spec,
                      std::uint64_t seed, const RunOptions& options) {
  GraphState state = new_pool(params, seed);
  try {
    TrialTrace trace = run_policy(state, spec, options);
    trace.seed = seed;
    return trace;
  } catch (const CapacityError& e) {
    throw CapacityError(std::string(e.what()) + " [policy " + spec.describe() +
                        ", seed " + std::to_string(seed) + ", t=" +
                        std::to_string(state.arrivals()) + ", " +
                        params.describe() + "]");
  }
}

TrialTrace run_cm2(const ModelParams& params, int s_high, int s_low,
                   std::uint64_t seed) {
  return run_policy(params, PolicySpec{Scheme::kCm2, s_high, s_low}, seed);
}

TrialTrace run_cm3(const ModelParams& params, int s_high, int s_low,
                   std::uint64_t seed) {
  return run_policy(params, PolicySpec{Scheme::kCm3, s_high, s_low}, seed);
}

TrialTrace run_online_chain(ModelParams params, int k, bool with_chain,
                            std::uint64_t seed) {
  params.ndd_count = with_chain ? 1 : 0;
  PolicySpec spec;
  spec.scheme = Scheme::kOnlineChain;
  spec.k = k;
  spec.with_chain = with_chain;
  return run_policy(params, spec, seed);
}

}  // namespace kxdyn
