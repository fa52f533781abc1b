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

// Monte Carlo scenarios: many trials of several policies over a ladder of
// horizons, with paired comparisons.
//
// Config (JSON):
//   {
//     "name": "cor1",
//     "model": {"rho": 0.5, "c": 2, "p": 0.3, "sigma": 0, "ndd_count": 0},
//     "n_ladder": [1000, 2000, 4000],        // or "n": 1000
//     "trials": 200,
//     "master_seed": 7,
//     "policies": [
//       {"label": "online", "scheme": "CM2", "S_H": 1, "S_L": 1},
//       {"label": "sqrt", "scheme": "CM2", "S_H": "sqrt(n)", "S_L": "sqrt(n)"},
//       {"label": "chain", "scheme": "ONLINE_CHAIN", "k": 2, "chain": true}
//     ],
//     "comparisons": [["sqrt", "online"]],
//     "output": "out/cor1.csv",
//     "workers": 4,              // optional, KXDYN_WORKERS otherwise
//     "record_runtime": false    // optional
//   }
//
// Waiting periods are integers or size rules resolved per rung: "n", "n/4",
// "sqrt(n)" or "<coef>*n^<exp>" optionally followed by "/<div>". Rules round
// up and clamp to [1, n].

#ifndef KXDYN_HARNESS_H_
#define KXDYN_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kxdyn/model.h"
#include "kxdyn/policies.h"
#include "kxdyn/stats.h"

namespace kxdyn {

// Throws SpecError for malformed rules.
int resolve_size(std::string_view rule, int n);

struct PolicyEntry {
  std::string label;
  Scheme scheme = Scheme::kCm2;
  std::string s_high = "1";
  std::string s_low = "1";
  int k = 2;
  bool with_chain = false;

  PolicySpec resolve(int n) const;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ModelParams model;  // n is taken from the ladder
  std::vector<int> n_ladder;
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::vector<PolicyEntry> policies;
  std::vector<std::pair<std::string, std::string>> comparisons;
  std::string output_path;
  int workers = 0;  // 0: KXDYN_WORKERS or hardware concurrency
  bool record_runtime = false;

  // Throws SpecError (or ModelError) on the first problem found.
  void validate() const;

  static ScenarioConfig from_json(const nlohmann::json& j);
  static ScenarioConfig load(const std::string& path);
};

// Seed shared by every policy in trial `trial` at horizon n.
std::uint64_t trial_seed(std::uint64_t master, int n, int trial);

// Effective model of one run: the scenario model at horizon n, with one
// non-directed donor for chain policies.
ModelParams run_params(const ScenarioConfig& config, int n,
                       const PolicySpec& spec);

struct RunRow {
  int n = 0;
  int policy = 0;  // index into config.policies
  PolicySpec spec;
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<int> matched_total;  // empty when the run failed
  std::optional<int> matched_h;
  std::optional<int> matched_l;
  double runtime_ms = 0.0;
  std::string error;
};

struct GapEstimate {
  std::string policy_a;
  std::string policy_b;
  int n = 0;
  int trials = 0;  // paired trials where both runs succeeded
  Summary gap_per_n;
};

struct ScenarioResult {
  std::vector<RunRow> rows;  // sorted by (n, policy, trial)
  std::vector<GapEstimate> gaps;
};

// Worker count: explicit value if positive, else KXDYN_WORKERS if set, else
// hardware concurrency.
int worker_count(int requested);

ScenarioResult run_scenario(const ScenarioConfig& config);

// Header: scenario,n,rho,c,p,sigma,scheme,S_H,S_L,k,chain,trial,seed,
//         matched_total,matched_H,matched_L,runtime_ms
void write_results_csv(std::ostream& out, const ScenarioConfig& config,
                       std::span<const RunRow> rows);
void write_gaps_csv(std::ostream& out, std::span<const GapEstimate> gaps);

enum class Trend { kShrinking, kStablePositive, kStableZero, kInconclusive };

std::string_view trend_name(Trend t);

// Verdict over rungs in ascending n:
//   stable-zero      every paired gap was exactly zero;
//   shrinking        means strictly decrease over >= 3 rungs and the last
//                    upper bound is below half the first mean;
//   stable-positive  every interval excludes zero and
//                    (max - min) / max of the means is below 0.5;
//   inconclusive     otherwise.
Trend classify_trend(std::span<const GapEstimate> rungs, bool all_zero);

struct TrendReport {
  std::string policy_a;
  std::string policy_b;
  std::vector<GapEstimate> rungs;
  Trend verdict = Trend::kInconclusive;
};

// Needs a ladder of at least three rungs, each double the previous.
std::vector<TrendReport> scaling_study(const ScenarioConfig& config,
                                       const ScenarioResult& result);

void write_trend_csv(std::ostream& out, std::span<const TrendReport> reports);

// Writes output_path, output_path + ".gaps.csv" and, for ladders, ".trend.csv".
// Throws std::runtime_error naming the path on I/O failure.
void write_outputs(const ScenarioConfig& config, const ScenarioResult& result,
                   std::span<const TrendReport> trends);

// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace kxdyn

#endif  // KXDYN_HARNESS_H_
