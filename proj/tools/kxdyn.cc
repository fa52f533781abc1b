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

// kxdyn command line: scenario runs, scaling studies, region scans, oracle
// checks and SVG charts.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kxdyn/chart.h"
#include "kxdyn/cycles.h"
#include "kxdyn/error.h"
#include "kxdyn/harness.h"
#include "kxdyn/matching.h"
#include "kxdyn/theory.h"

namespace {

using namespace kxdyn;

struct Overrides {
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  bool runtime = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--trials", trials, "Override the trial count");
    cmd->add_option("--seed", seed, "Override the master seed");
    cmd->add_option("--out", out, "Override the output CSV path");
    cmd->add_option("--workers", workers, "Worker threads (default: KXDYN_WORKERS or all cores)");
    cmd->add_flag("--runtime", runtime, "Record wall-clock runtime per row");
  }

  void apply(ScenarioConfig& c) const {
    if (trials) c.trials = *trials;
    if (seed) c.master_seed = *seed;
    if (out) c.output_path = *out;
    if (workers) c.workers = *workers;
    if (runtime) c.record_runtime = true;
    c.validate();
  }
};

void print_gaps(const std::vector<GapEstimate>& gaps) {
  for (const GapEstimate& g : gaps) {
    std::cout << g.policy_a << " - " << g.policy_b << "  n=" << g.n
              << "  gap/n=" << format_number(g.gap_per_n.mean) << "  95% ["
              << format_number(g.gap_per_n.lo) << ", " << format_number(g.gap_per_n.hi)
              << "]  trials=" << g.trials << "\n";
  }
}

int simulate(const std::string& path, const Overrides& o, bool scaling) {
  ScenarioConfig c = ScenarioConfig::load(path);
  o.apply(c);
  if (c.output_path.empty()) c.output_path = c.name + ".csv";
  const ScenarioResult r = run_scenario(c);
  std::vector<TrendReport> trends;
  if (scaling) trends = scaling_study(c, r);
  write_outputs(c, r, trends);
  int failed = 0;
  for (const RunRow& row : r.rows) {
    if (!row.matched_total) {
      ++failed;
      std::cerr << "run failed (n=" << row.n << ", " << row.spec.describe()
                << ", trial " << row.trial << "): " << row.error << "\n";
    }
  }
  std::cout << r.rows.size() << " runs written to " << c.output_path << "\n";
  print_gaps(r.gaps);
  for (const TrendReport& t : trends) {
    std::cout << t.policy_a << " vs " << t.policy_b << ": " << trend_name(t.verdict)
              << "\n";
  }
  return failed == 0 ? 0 : 3;
}

int region(double p, double delta, const std::string& out) {
  const auto cs = default_c_grid();
  const auto rhos = default_rho_grid();
  const auto points = region_scan(p, delta, cs, rhos);
  const std::filesystem::path target(out);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out);
  write_region_csv(file, points);
  int satisfied = 0;
  for (const RegionPoint& pt : points) satisfied += pt.satisfied;
  std::cout << points.size() << " grid points, " << satisfied << " satisfied, written to "
            << out << "\n";
  return 0;
}

UndirectedView random_view(std::mt19937_64& rng, int n, double prob) {
  std::bernoulli_distribution coin(prob);
  UndirectedView v;
  for (int i = 0; i < n; ++i) {
    v.nodes.push_back(i);
    v.types.push_back(rng() % 2 ? NodeType::kH : NodeType::kL);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng)) v.edges.emplace_back(a, b);
    }
  }
  return v;
}

GraphState random_digraph(std::mt19937_64& rng, int n, double prob) {
  std::bernoulli_distribution coin(prob);
  std::vector<NodeType> types;
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i) types.push_back(rng() % 2 ? NodeType::kH : NodeType::kL);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u != v && coin(rng)) arcs.emplace_back(u, v);
    }
  }
  GraphState g = GraphState::scripted(std::move(types), std::move(arcs));
  while (!g.finished()) g.arrive_node();
  return g;
}

int verify(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  auto report = [&](const char* name, int good, int total) {
    failures += good != total;
    std::cout << (good == total ? "PASS " : "FAIL ") << name << ": " << good << "/"
              << total << "\n";
  };

  int good = 0;
  for (int i = 0; i < 500; ++i) {
    const UndirectedView v = random_view(rng, 1 + static_cast<int>(rng() % 10), 0.4);
    const Matching m = max_matching(v);
    good += is_valid_matching(v, m) && m.size() == brute_force_matching(v).size();
  }
  report("max_matching equals exhaustive search", good, 500);

  good = 0;
  for (int i = 0; i < 300; ++i) {
    const UndirectedView v = random_view(rng, 2 + static_cast<int>(rng() % 11), 0.35);
    const Matching m = two_stage_matching(v);
    good += is_valid_matching(v, m) && m.size() <= brute_force_matching(v).size();
  }
  report("two_stage_matching within maximum", good, 300);

  good = 0;
  int total = 0;
  while (total < 300) {
    const GraphState g = random_digraph(rng, 2 + static_cast<int>(rng() % 10), 0.3);
    const std::vector<Cycle> cycles = enumerate_cycles(g, 3, false);
    if (cycles.size() > kBruteForcePackingLimit) continue;
    ++total;
    bool ok = true;
    for (PackingObjective obj : {PackingObjective::kTotal, PackingObjective::kHighFirst}) {
      const CycleSet a = max_cycle_packing(cycles, obj);
      const CycleSet b = brute_force_packing(cycles, obj);
      ok = ok && is_valid_cycle_set(g, a) && a.matched_nodes == b.matched_nodes &&
           (obj == PackingObjective::kTotal || a.matched_h == b.matched_h);
    }
    good += ok;
  }
  report("max_cycle_packing equals exhaustive search", good, total);
  return failures == 0 ? 0 : 1;
}

int chart(const std::string& input, const std::string& kind, const std::string& out,
          const std::string& title) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot read " + input);
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out);
  if (kind == "region") {
    const auto points = region_from_csv(in);
    emit_region_chart(file, points, ChartSpec{title, "c", "rho"});
  } else {
    const auto series = series_from_results(in);
    emit_line_chart(file, series, ChartSpec{title, "S_L", "mean matched"});
  }
  std::cout << "chart written to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kxdyn: dynamic kidney exchange simulator"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides sim_overrides, scale_overrides;
  auto* sim = app.add_subcommand("simulate", "Run a scenario and write CSV results");
  sim->add_option("config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  sim_overrides.attach(sim);

  auto* scale = app.add_subcommand("scaling", "Run a scenario ladder and classify gap trends");
  scale->add_option("config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  scale_overrides.attach(scale);

  double p = 0.1, delta = 0.001;
  std::string region_out = "region.csv";
  auto* reg = app.add_subcommand("region", "Scan the (c, rho) grid for the three-way condition");
  reg->add_option("--p", p, "Low-type arc probability")->capture_default_str();
  reg->add_option("--delta", delta, "Threshold")->capture_default_str();
  reg->add_option("--out", region_out, "CSV path")->capture_default_str();

  std::uint64_t verify_seed = 1;
  auto* ver = app.add_subcommand("verify", "Check solvers against exhaustive search");
  ver->add_option("--seed", verify_seed, "Instance seed")->capture_default_str();

  std::string chart_in, chart_kind = "lines", chart_out, chart_title;
  auto* cht = app.add_subcommand("chart", "Render an SVG chart from a CSV");
  cht->add_option("input", chart_in, "Results or region CSV")->required()->check(CLI::ExistingFile);
  cht->add_option("--kind", chart_kind, "lines or region")
      ->check(CLI::IsMember({"lines", "region"}))
      ->capture_default_str();
  cht->add_option("--out", chart_out, "SVG path (default: input with .svg)");
  cht->add_option("--title", chart_title, "Chart title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return simulate(config_path, sim_overrides, false);
    if (*scale) return simulate(config_path, scale_overrides, true);
    if (*reg) return region(p, delta, region_out);
    if (*ver) return verify(verify_seed);
    if (*cht) {
      if (chart_out.empty()) {
        chart_out = std::filesystem::path(chart_in).replace_extension(".svg").string();
      }
      return chart(chart_in, chart_kind, chart_out, chart_title);
    }
  } catch (const SpecError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
