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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 255).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kxdyn/cycles.h"
#include "kxdyn/harness.h"
#include "kxdyn/matching.h"
#include "kxdyn/policies.h"
#include "kxdyn/random.h"
#include "kxdyn/stats.h"
#include "kxdyn/theory.h"
#include "oracles.h"

namespace kxdyn {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5g", v);
  return buf;
}

std::string describe(const Summary& s) {
  return fmt(s.mean) + " [" + fmt(s.lo) + ", " + fmt(s.hi) + "]";
}

const std::vector<int> kLadder = {1000, 2000, 4000};

ModelParams model(double rho, double c, double p, double sigma = 0.0) {
  ModelParams m;
  m.rho = rho;
  m.c = c;
  m.p = p;
  m.sigma = sigma;
  return m;
}

PolicyEntry cm2(std::string label, std::string s_high, std::string s_low) {
  return PolicyEntry{std::move(label), Scheme::kCm2, std::move(s_high),
                     std::move(s_low), 2, false};
}

PolicyEntry cm3(std::string label, std::string s_high, std::string s_low) {
  return PolicyEntry{std::move(label), Scheme::kCm3, std::move(s_high),
                     std::move(s_low), 3, false};
}

PolicyEntry chain(std::string label, int k, bool with_chain) {
  return PolicyEntry{std::move(label), Scheme::kOnlineChain, "1", "1", k,
                     with_chain};
}

ScenarioConfig scenario(std::string name, ModelParams m, int trials,
                        std::uint64_t seed, std::vector<PolicyEntry> policies,
                        std::vector<std::pair<std::string, std::string>> comps,
                        std::vector<int> ladder = kLadder) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.model = m;
  c.n_ladder = std::move(ladder);
  c.trials = trials;
  c.master_seed = seed;
  c.policies = std::move(policies);
  c.comparisons = std::move(comps);
  c.validate();
  return c;
}

std::vector<GapEstimate> gaps_for(const ScenarioResult& r, const std::string& a,
                                  const std::string& b) {
  std::vector<GapEstimate> out;
  for (const GapEstimate& g : r.gaps) {
    if (g.policy_a == a && g.policy_b == b) out.push_back(g);
  }
  std::sort(out.begin(), out.end(),
            [](const GapEstimate& x, const GapEstimate& y) { return x.n < y.n; });
  return out;
}

Trend trend_for(const std::vector<TrendReport>& reports, const std::string& a,
                const std::string& b) {
  for (const TrendReport& t : reports) {
    if (t.policy_a == a && t.policy_b == b) return t.verdict;
  }
  return Trend::kInconclusive;
}

std::string rung_text(const std::vector<GapEstimate>& rungs) {
  std::string s;
  for (const GapEstimate& g : rungs) {
    if (!s.empty()) s += "; ";
    s += "n=" + std::to_string(g.n) + " " + describe(g.gap_per_n);
  }
  return s;
}

bool all_positive(const std::vector<GapEstimate>& rungs) {
  return !rungs.empty() && std::all_of(rungs.begin(), rungs.end(), [](const auto& g) {
    return g.gap_per_n.lo > 0.0;
  });
}

int failed_rows(const ScenarioResult& r) {
  return static_cast<int>(std::count_if(r.rows.begin(), r.rows.end(), [](const RunRow& row) {
    return !row.matched_total.has_value();
  }));
}

// ---------------------------------------------------------------------------

Verdict matching_exactness() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  int agree = 0;
  const int instances = 500;
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const UndirectedView v = random_view(rng, n, 0.4);
    const Matching m = max_matching(v);
    agree += is_valid_matching(v, m) && static_cast<int>(m.size()) == subset_oracle(v);
  }
  const double secs = seconds_since(start);
  return {agree == instances && secs < 10.0,
          std::to_string(agree) + "/" + std::to_string(instances) + " agree, " +
              fmt(secs) + " s (limit 10 s)"};
}

Verdict packing_exactness() {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  int agree = 0;
  const int instances = 300;
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Digraph d = random_digraph(rng, n, 0.3);
    const GraphState g = to_state(d);
    const CycleSet s =
        max_cycle_packing(enumerate_cycles(g, 3, false), PackingObjective::kTotal);
    agree += is_valid_cycle_set(g, s) && s.matched_nodes == exhaustive(d).total;
  }
  const double secs = seconds_since(start);
  return {agree == instances && secs < 30.0,
          std::to_string(agree) + "/" + std::to_string(instances) + " agree, " +
              fmt(secs) + " s (limit 30 s)"};
}

Verdict residual_invariants() {
  const int n = 2000;
  const int trials = 50;
  const int root = resolve_size("sqrt(n)", n);
  ModelParams m = model(0.5, 2.0, 0.3);
  m.n = n;
  int violations = 0;
  long phases = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = derive_seed(303, n, trial);
    RunOptions cm2_opts;
    cm2_opts.record_periods = false;
    cm2_opts.after_phase = [&](const GraphState& g, Phase p, int) {
      ++phases;
      violations += !reduced_undirected(g, p != Phase::kFull).edges.empty();
    };
    GraphState a = new_pool(m, seed);
    run_policy(a, PolicySpec{Scheme::kCm2, 1, root}, cm2_opts);

    RunOptions cm3_opts;
    cm3_opts.record_periods = false;
    cm3_opts.after_phase = [&](const GraphState& g, Phase p, int) {
      ++phases;
      violations += !enumerate_cycles(g, 3, p != Phase::kFull).empty();
    };
    GraphState b = new_pool(m, seed);
    run_policy(b, PolicySpec{Scheme::kCm3, 1, root, 3}, cm3_opts);

    for (int k : {2, 3}) {
      RunOptions opts;
      opts.record_periods = false;
      opts.after_phase = [&](const GraphState& g, Phase, int) {
        ++phases;
        violations += !enumerate_cycles(g, k, false).empty();
      };
      ModelParams with_donor = m;
      with_donor.ndd_count = 1;
      GraphState c = new_pool(with_donor, seed);
      run_policy(c, PolicySpec{Scheme::kOnlineChain, 1, 1, k, true}, opts);
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over " +
                               std::to_string(phases) + " phases, " +
                               std::to_string(trials) + " trials at n=2000"};
}

// Criteria 4 to 7 share the heterogeneous sparse setting.
struct ChunkStudy {
  ScenarioResult sublinear;
  double sublinear_secs = 0;
  ScenarioConfig sub_config;
  ScenarioResult linear;
  ScenarioConfig lin_config;
  std::vector<TrendReport> lin_trends;
};

const ChunkStudy& chunk_study() {
  static const ChunkStudy study = [] {
    ChunkStudy s;
    s.sub_config = scenario("sublinear", model(0.5, 2.0, 0.3), 200, 404,
                            {cm2("online", "1", "1"), cm2("sqrt", "sqrt(n)", "sqrt(n)")},
                            {{"sqrt", "online"}});
    const auto start = Clock::now();
    s.sublinear = run_scenario(s.sub_config);
    s.sublinear_secs = seconds_since(start);
    s.lin_config = scenario(
        "linear", model(0.5, 2.0, 0.3), 200, 404,
        {cm2("online", "1", "1"), cm2("quarter", "n/4", "n/4"), cm2("half", "n/2", "n/2"),
         cm2("full", "n", "n"), cm2("wait_quarter", "1", "n/4"),
         cm2("wait_sqrt", "1", "sqrt(n)")},
        {{"quarter", "online"}, {"full", "half"}, {"wait_quarter", "online"},
         {"wait_sqrt", "online"}});
    s.linear = run_scenario(s.lin_config);
    s.lin_trends = scaling_study(s.lin_config, s.linear);
    return s;
  }();
  return study;
}

Verdict sublinear_chunks() {
  const ChunkStudy& s = chunk_study();
  const auto rungs = gaps_for(s.sublinear, "sqrt", "online");
  bool ok = rungs.size() == 3 && failed_rows(s.sublinear) == 0;
  for (std::size_t i = 0; ok && i < rungs.size(); ++i) {
    ok = rungs[i].gap_per_n.mean >= 0.0 &&
         (i == 0 || rungs[i].gap_per_n.mean < rungs[i - 1].gap_per_n.mean);
  }
  ok = ok && s.sublinear_secs < 600.0;
  return {ok, rung_text(rungs) + "; " + fmt(s.sublinear_secs) + " s (limit 600 s)"};
}

Verdict linear_chunks() {
  const ChunkStudy& s = chunk_study();
  const auto rungs = gaps_for(s.linear, "quarter", "online");
  const Trend t = trend_for(s.lin_trends, "quarter", "online");
  return {rungs.size() == 3 && t == Trend::kStablePositive,
          rung_text(rungs) + "; verdict " + std::string(trend_name(t))};
}

Verdict offline_beats_linear() {
  const ChunkStudy& s = chunk_study();
  const auto rungs = gaps_for(s.linear, "full", "half");
  return {rungs.size() == 3 && all_positive(rungs), rung_text(rungs)};
}

Verdict nonuniform_waiting() {
  const ChunkStudy& s = chunk_study();
  const auto linear = gaps_for(s.linear, "wait_quarter", "online");
  const auto root = gaps_for(s.linear, "wait_sqrt", "online");
  const Trend t = trend_for(s.lin_trends, "wait_sqrt", "online");
  const bool ok = linear.size() == 3 && all_positive(linear) &&
                  (t == Trend::kShrinking || t == Trend::kStableZero);
  return {ok, "CM(1,n/4): " + rung_text(linear) + " | CM(1,sqrt n): " +
                  rung_text(root) + " verdict " + std::string(trend_name(t))};
}

Verdict two_stage_deficit() {
  const int trials = 100;
  std::vector<double> means;
  std::string text;
  bool all_zero = true;
  for (int n : kLadder) {
    ModelParams m = model(0.5, 2.0, 0.3);
    m.n = n;
    std::vector<double> deficits;
    for (int trial = 0; trial < trials; ++trial) {
      GraphState g = new_pool(m, derive_seed(808, n, trial));
      while (!g.finished()) g.arrive_node();
      const UndirectedView v = reduced_undirected(g, false);
      const double gap =
          static_cast<double>(max_matching(v).size()) - two_stage_matching(v).size();
      all_zero = all_zero && gap == 0.0;
      deficits.push_back(gap / n);
    }
    const Summary s = summarize(deficits);
    means.push_back(s.mean);
    text += (text.empty() ? "" : "; ") + ("n=" + std::to_string(n) + " " + describe(s));
  }
  bool shrinking = true;
  for (std::size_t i = 1; i < means.size(); ++i) shrinking &= means[i] < means[i - 1];
  const bool ok = (shrinking || all_zero) && means.back() < 0.01;
  return {ok, text + (all_zero ? " (identically zero)" : "")};
}

Verdict perfect_matching_gate() {
  const auto start = Clock::now();
  const int nu = 500;
  const double rate = er_perfect_matching_rate(nu, 2 * std::log(nu) / nu, 100, 909);
  const double secs = seconds_since(start);
  return {rate >= 0.95 && secs < 60.0,
          "rate " + fmt(rate) + " (gate 0.95), " + fmt(secs) + " s (limit 60 s)"};
}

Verdict chains_without_low() {
  const ScenarioConfig c = scenario(
      "chains_h", model(1.0, 2.0, 0.3), 200, 1010,
      {chain("cycles", 3, false), chain("chain", 3, true)}, {});
  const ScenarioResult r = run_scenario(c);
  bool ok = failed_rows(r) == 0;
  std::string text;
  std::vector<double> chain_means;
  for (int n : kLadder) {
    std::vector<double> cyc, frac;
    for (const RunRow& row : r.rows) {
      if (row.n != n || !row.matched_total) continue;
      if (row.policy == 0) cyc.push_back(*row.matched_total);
      if (row.policy == 1) frac.push_back(static_cast<double>(*row.matched_total) / n);
    }
    const Summary cs = summarize(cyc);
    const Summary fs = summarize(frac);
    ok = ok && cs.mean <= 20.0 && fs.lo > 0.0;
    chain_means.push_back(fs.mean);
    text += (text.empty() ? "" : "; ") +
            ("n=" + std::to_string(n) + " O_3 " + fmt(cs.mean) + ", O^c_3/n " +
             describe(fs));
  }
  const auto [lo, hi] = std::minmax_element(chain_means.begin(), chain_means.end());
  const double variation = *hi > 0 ? (*hi - *lo) / *hi : 1.0;
  ok = ok && variation < 0.5;
  return {ok, text + "; variation " + fmt(variation)};
}

Verdict chains_mixed() {
  const ScenarioConfig c = scenario(
      "chains_mixed", model(0.5, 2.0, 0.3), 200, 1111,
      {chain("cycles", 2, false), chain("chain", 2, true)}, {{"chain", "cycles"}});
  const ScenarioResult r = run_scenario(c);
  const auto rungs = gaps_for(r, "chain", "cycles");
  int identical = 0;
  const int checks = 20;
  for (int trial = 0; trial < checks; ++trial) {
    ModelParams m = model(0.0, 2.0, 0.3);
    m.n = 1000;
    const std::uint64_t seed = derive_seed(1112, trial);
    const TrialTrace a = run_online_chain(m, 2, false, seed);
    const TrialTrace b = run_online_chain(m, 2, true, seed);
    identical += a.periods == b.periods && b.chain_segments.empty();
  }
  return {all_positive(rungs) && rungs.size() == 3 && identical == checks,
          rung_text(rungs) + "; rho=0 traces identical " + std::to_string(identical) +
              "/" + std::to_string(checks)};
}

Verdict three_way_waiting() {
  const double lhs = condition_lhs(1.0, 0.5, 0.1);
  const ScenarioConfig c = scenario(
      "three_way", model(0.5, 1.0, 0.1), 200, 1212,
      {cm3("online", "1", "1"), cm3("wait_sqrt", "1", "sqrt(n)")},
      {{"wait_sqrt", "online"}});
  const ScenarioResult r = run_scenario(c);
  const auto rungs = gaps_for(r, "wait_sqrt", "online");
  return {lhs >= 0.001 && rungs.size() == 3 && all_positive(rungs) && failed_rows(r) == 0,
          "condition " + fmt(lhs) + "; " + rung_text(rungs)};
}

Verdict dense_regime() {
  const ScenarioConfig c = scenario(
      "dense", model(0.5, 2.0, 0.3, 0.5), 200, 1313,
      {cm2("online", "1", "1"), cm2("linear_wait", "1*n^0.5", "1*n^0.5"),
       cm2("short_wait", "1*n^-0.1", "1*n^-0.1")},
      {{"linear_wait", "online"}, {"short_wait", "online"}});
  const ScenarioResult r = run_scenario(c);
  const auto trends = scaling_study(c, r);
  const auto gain = gaps_for(r, "linear_wait", "online");
  const auto small = gaps_for(r, "short_wait", "online");
  const Trend t = trend_for(trends, "short_wait", "online");
  const bool ok = gain.size() == 3 && all_positive(gain) &&
                  (t == Trend::kShrinking || t == Trend::kStableZero);
  return {ok, "S=n^0.5: " + rung_text(gain) + " | S=n^-0.1: " + rung_text(small) +
                  " verdict " + std::string(trend_name(t))};
}

Verdict dense_online_bound() {
  const int n = 500;
  const int trials = 500;
  std::vector<double> residual, fraction;
  double bound = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const ResidualStats s = online_residual(0.3, n, derive_seed(1414, trial));
    residual.push_back(s.unmatched);
    fraction.push_back(static_cast<double>(n - s.unmatched) / n);
    bound = s.bound;
  }
  const Summary z = summarize(residual);
  const Summary f = summarize(fraction);
  return {z.mean <= bound && f.mean >= 0.99,
          "mean unmatched " + describe(z) + " vs bound " + fmt(bound) +
              "; matched fraction " + fmt(f.mean) + " (gate 0.99)"};
}

Verdict formula_fixtures() {
  std::ifstream in(std::string(KXDYN_FIXTURE_DIR) + "/formulas.json");
  if (!in) return {false, "missing formulas.json"};
  const nlohmann::json f = nlohmann::json::parse(in);
  int checked = 0, bad = 0;
  double worst = 0;
  auto check = [&](double got, const std::string& text) {
    const double want = std::stod(text);
    const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    worst = std::max(worst, rel);
    bad += rel > 1e-12;
    ++checked;
  };
  for (const auto& r : f["condition_lhs"]) check(condition_lhs(r["c"], r["rho"], r["p"]), r["value"]);
  for (const auto& r : f["delta_half_bound"]) check(delta_half_bound(r["d"]), r["value"]);
  for (const auto& r : f["residual_bound"]) check(residual_bound(r["p_high"], r["t"]), r["value"]);
  const bool counts = f["condition_lhs"].size() == 20 && f["delta_half_bound"].size() == 20 &&
                      f["residual_bound"].size() == 20;

  const auto cs = default_c_grid();
  const auto rhos = default_rho_grid();
  const auto loose = region_scan(0.1, 0.0001, cs, rhos);
  const auto mid = region_scan(0.1, 0.001, cs, rhos);
  const auto tight = region_scan(0.1, 0.01, cs, rhos);
  int satisfied = 0, near_one = 0;
  bool monotone = true;
  for (std::size_t i = 0; i < mid.size(); ++i) {
    satisfied += mid[i].satisfied;
    near_one += mid[i].satisfied && mid[i].rho >= 0.99 - 1e-12;
    monotone &= (!tight[i].satisfied || mid[i].satisfied) &&
                (!mid[i].satisfied || loose[i].satisfied);
  }
  const bool ok = counts && bad == 0 && satisfied > 0 && near_one == 0 && monotone;
  return {ok, std::to_string(checked - bad) + "/" + std::to_string(checked) +
                  " fixtures within 1e-12 (worst " + fmt(worst) + "); region " +
                  std::to_string(satisfied) + " cells, " + std::to_string(near_one) +
                  " at rho>=0.99, monotone " + (monotone ? "yes" : "no")};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  ScenarioConfig c = scenario(
      "determinism", model(0.5, 2.0, 0.3), 20, 1616,
      {cm2("online", "1", "1"), cm2("sqrt", "sqrt(n)", "sqrt(n)"),
       cm3("tri", "1", "n/8"), chain("chain", 3, true)},
      {{"sqrt", "online"}, {"tri", "online"}}, {200, 400, 800});
  const auto root = std::filesystem::temp_directory_path() / "kxdyn_acceptance";
  std::vector<std::string> runs;
  for (int workers : {1, 4, 1}) {
    c.workers = workers;
    c.output_path = (root / ("w" + std::to_string(runs.size())) / "out.csv").string();
    const ScenarioResult r = run_scenario(c);
    write_outputs(c, r, scaling_study(c, r));
    runs.push_back(slurp(c.output_path) + slurp(c.output_path + ".gaps.csv") +
                   slurp(c.output_path + ".trend.csv"));
  }
  std::filesystem::remove_all(root);
  const bool ok = !runs[0].empty() && runs[0] == runs[1] && runs[1] == runs[2];
  return {ok, std::to_string(runs[0].size()) + " bytes; workers 1/4/1 " +
                  (ok ? "identical" : "differ")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace kxdyn

int main(int argc, char** argv) {
  using namespace kxdyn;
  CLI::App app{"kxdyn acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criterion numbers");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "matching exactness", matching_exactness},
      {2, "cycle packing exactness", packing_exactness},
      {3, "residual invariants", residual_invariants},
      {4, "sublinear chunks track online", sublinear_chunks},
      {5, "linear chunks gain linearly", linear_chunks},
      {6, "offline beats half-horizon chunks", offline_beats_linear},
      {7, "nonuniform waiting", nonuniform_waiting},
      {8, "two-stage matching deficit", two_stage_deficit},
      {9, "perfect matching gate", perfect_matching_gate},
      {10, "chains on all-high pools", chains_without_low},
      {11, "chains on mixed pools", chains_mixed},
      {12, "three-way waiting gain", three_way_waiting},
      {13, "dense regime waiting", dense_regime},
      {14, "dense online residual", dense_online_bound},
      {15, "formula fixtures and region", formula_fixtures},
      {16, "determinism across workers", determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": "
              << v.detail << " (" << fmt(seconds_since(start)) << " s)" << std::endl;
  }
  return std::min(failures, 255);
}
