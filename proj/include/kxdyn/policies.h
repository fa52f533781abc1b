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

// Dynamic matching schemes driven one arrival at a time.
//
// Chunk schemes (CM2 with two-cycles, CM3 with two- and three-cycles) split
// the horizon into blocks of s_low arrivals. Every s_high arrivals inside a
// block they clear what they can while ignoring L-L compatibility; at the end
// of a block they clear the whole residual pool. When s_low does not divide
// n the last block is shorter.
//
// The online scheme matches each arrival through a cycle of length at most k
// or, with a chain, by extending the chain started by a non-directed donor.

#ifndef KXDYN_POLICIES_H_
#define KXDYN_POLICIES_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kxdyn/graph.h"

namespace kxdyn {

enum class Scheme { kCm2, kCm3, kOnlineChain };

std::string_view scheme_name(Scheme s);
// Accepts "CM2", "CM3" and "ONLINE_CHAIN". Throws SpecError otherwise.
Scheme parse_scheme(std::string_view name);

struct PolicySpec {
  Scheme scheme = Scheme::kCm2;
  int s_high = 1;
  int s_low = 1;
  int k = 2;
  bool with_chain = false;

  // Throws SpecError when the spec cannot run on a horizon of n arrivals.
  void validate(int n) const;
  std::string describe() const;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

struct PeriodRecord {
  int t = 0;
  int arrivals = 0;
  int matched_total = 0;
  int matched_h = 0;
  int matched_l = 0;
  int pool_size = 0;

  friend bool operator==(const PeriodRecord&, const PeriodRecord&) = default;
};

struct TrialTrace {
  PolicySpec policy;
  std::uint64_t seed = 0;
  std::vector<PeriodRecord> periods;  // one per arrival when recorded
  int matched_total = 0;
  int matched_h = 0;
  int matched_l = 0;
  std::vector<std::vector<NodeId>> chain_segments;
};

enum class Phase {
  kPriority,  // chunk scheme, L-L ignored
  kFull,      // chunk scheme, end of block
  kOnline,    // online scheme, after handling one arrival
};

struct RunOptions {
  bool record_periods = true;
  // Called after every matching phase with the pool in its post-phase state.
  std::function<void(const GraphState&, Phase, int t)> after_phase;
};

// Runs the policy on a pool that has not seen any arrival yet.
TrialTrace run_policy(GraphState& state, const PolicySpec& spec,
                      const RunOptions& options = {});

// Same on a fresh random pool. Solver capacity errors are rethrown with the
// seed and policy attached.
TrialTrace run_policy(const ModelParams& params, const PolicySpec& spec,
                      std::uint64_t seed, const RunOptions& options = {});

TrialTrace run_cm2(const ModelParams& params, int s_high, int s_low,
                   std::uint64_t seed);
TrialTrace run_cm3(const ModelParams& params, int s_high, int s_low,
                   std::uint64_t seed);
// Uses one non-directed donor when with_chain, none otherwise.
TrialTrace run_online_chain(ModelParams params, int k, bool with_chain,
                            std::uint64_t seed);

inline constexpr std::int64_t kChainSearchBudget = 100000;

// Longest simple path start -> ... through active pairs, scored by its length
// up to and including its last H node and returned in that truncated form.
// Empty when no path from `start` reaches an H node. Neighbours are tried in
// ascending id; the search stops after kChainSearchBudget expansions and
// keeps the best path seen.
std::vector<NodeId> best_chain_extension(const GraphState& state, NodeId start);

}  // namespace kxdyn

#endif  // KXDYN_POLICIES_H_
