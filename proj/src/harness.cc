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

#include "kxdyn/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <regex>
#include <thread>

#include "kxdyn/error.h"
#include "kxdyn/random.h"

namespace kxdyn {
namespace {

using nlohmann::json;

std::string size_rule(const json& v, const char* field) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_string()) return v.get<std::string>();
  throw SpecError(std::string("policy field ") + field +
                  " must be an integer or a size rule string");
}

int policy_index(const ScenarioConfig& config, const std::string& label) {
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    if (config.policies[i].label == label) return static_cast<int>(i);
  }
  throw SpecError("comparison names unknown policy '" + label + "'");
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int resolve_size(std::string_view rule, int n) {
  static const std::regex kPower(
      R"(^\s*([0-9]*\.?[0-9]+)\s*\*\s*n\s*\^\s*(-?[0-9]*\.?[0-9]+)\s*(/\s*([0-9]*\.?[0-9]+))?\s*$)");
  const std::string text(rule);
  double value = 0.0;
  std::smatch m;
  if (text == "n") {
    value = n;
  } else if (text == "sqrt(n)") {
    value = std::sqrt(static_cast<double>(n));
  } else if (text.size() > 2 && text.starts_with("n/")) {
    double div = 0.0;
    const auto res = std::from_chars(text.data() + 2, text.data() + text.size(), div);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || div <= 0) {
      throw SpecError("bad size rule '" + text + "'");
    }
    value = n / div;
  } else if (std::regex_match(text, m, kPower)) {
    value = std::stod(m[1]) * std::pow(static_cast<double>(n), std::stod(m[2]));
    if (m[4].matched) {
      const double div = std::stod(m[4]);
      if (div <= 0) throw SpecError("bad size rule '" + text + "'");
      value /= div;
    }
  } else {
    long long fixed = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), fixed);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || fixed < 1) {
      throw SpecError("bad size rule '" + text +
                      "' (expected a positive integer, n, n/<d>, sqrt(n) or "
                      "<a>*n^<b>[/<d>])");
    }
    return static_cast<int>(fixed);
  }
  // Guard against 31.000000000000004 style round-off before rounding up.
  const double up = std::ceil(value - 1e-9);
  return static_cast<int>(std::clamp(up, 1.0, static_cast<double>(n)));
}

PolicySpec PolicyEntry::resolve(int n) const {
  PolicySpec spec;
  spec.scheme = scheme;
  spec.k = k;
  spec.with_chain = with_chain;
  if (scheme != Scheme::kOnlineChain) {
    spec.s_high = resolve_size(s_high, n);
    spec.s_low = resolve_size(s_low, n);
    spec.k = scheme == Scheme::kCm3 ? 3 : 2;
  }
  return spec;
}

void ScenarioConfig::validate() const {
  if (n_ladder.empty()) throw SpecError("scenario has no horizon (n or n_ladder)");
  if (trials < 1) throw SpecError("trials must be positive");
  if (policies.empty()) throw SpecError("scenario has no policies");
  for (std::size_t i = 0; i < policies.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (policies[i].label == policies[j].label) {
        throw SpecError("duplicate policy label '" + policies[i].label + "'");
      }
    }
  }
  for (int n : n_ladder) {
    for (const PolicyEntry& entry : policies) {
      const PolicySpec spec = entry.resolve(n);
      try {
        spec.validate(n);
      } catch (const SpecError& e) {
        throw SpecError("policy '" + entry.label + "' at n=" + std::to_string(n) +
                        ": " + e.what());
      }
      run_params(*this, n, spec).validate();
    }
  }
  for (const auto& [a, b] : comparisons) {
    policy_index(*this, a);
    policy_index(*this, b);
  }
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  ScenarioConfig config;
  try {
    config.name = j.value("name", config.name);
    const json& model = j.at("model");
    config.model.rho = model.at("rho").get<double>();
    config.model.c = model.at("c").get<double>();
    config.model.p = model.at("p").get<double>();
    config.model.sigma = model.value("sigma", 0.0);
    config.model.ndd_count = model.value("ndd_count", 0);
    if (j.contains("n_ladder")) {
      config.n_ladder = j.at("n_ladder").get<std::vector<int>>();
    } else {
      config.n_ladder = {j.at("n").get<int>()};
    }
    config.trials = j.at("trials").get<int>();
    config.master_seed = j.value("master_seed", std::uint64_t{0});
    for (const json& p : j.at("policies")) {
      PolicyEntry entry;
      entry.scheme = parse_scheme(p.at("scheme").get<std::string>());
      entry.label = p.value("label", std::string());
      if (p.contains("S_H")) entry.s_high = size_rule(p.at("S_H"), "S_H");
      if (p.contains("S_L")) entry.s_low = size_rule(p.at("S_L"), "S_L");
      entry.k = p.value("k", entry.scheme == Scheme::kCm3 ? 3 : 2);
      entry.with_chain = p.value("chain", false);
      if (entry.label.empty()) {
        entry.label = entry.scheme == Scheme::kOnlineChain
                          ? std::string(entry.with_chain ? "O^c_" : "O_") +
                                std::to_string(entry.k)
                          : std::string(scheme_name(entry.scheme)) + "(" +
                                entry.s_high + "," + entry.s_low + ")";
      }
      config.policies.push_back(std::move(entry));
    }
    if (j.contains("comparisons")) {
      for (const json& c : j.at("comparisons")) {
        config.comparisons.emplace_back(c.at(0).get<std::string>(),
                                        c.at(1).get<std::string>());
      }
    }
    config.output_path = j.value("output", config.name + ".csv");
    config.workers = j.value("workers", 0);
    config.record_runtime = j.value("record_runtime", false);
  } catch (const json::exception& e) {
    throw SpecError(std::string("scenario config: ") + e.what());
  }
  config.validate();
  return config;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("config '" + path + "': " + e.what());
  }
  return from_json(j);
}

std::uint64_t trial_seed(std::uint64_t master, int n, int trial) {
  return derive_seed(master, static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(trial));
}

ModelParams run_params(const ScenarioConfig& config, int n,
                       const PolicySpec& spec) {
  ModelParams params = config.model;
  params.n = n;
  if (spec.scheme == Scheme::kOnlineChain && spec.with_chain) params.ndd_count = 1;
  return params;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KXDYN_WORKERS")) {
    int value = 0;
    const std::string_view text(env);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec == std::errc() && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  ScenarioResult result;
  for (int n : config.n_ladder) {
    for (std::size_t p = 0; p < config.policies.size(); ++p) {
      for (int trial = 0; trial < config.trials; ++trial) {
        RunRow row;
        row.n = n;
        row.policy = static_cast<int>(p);
        row.spec = config.policies[p].resolve(n);
        row.trial = trial;
        row.seed = trial_seed(config.master_seed, n, trial);
        result.rows.push_back(std::move(row));
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    RunOptions options;
    options.record_periods = false;
    for (std::size_t i = next++; i < result.rows.size(); i = next++) {
      RunRow& row = result.rows[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        const TrialTrace trace = run_policy(run_params(config, row.n, row.spec),
                                            row.spec, row.seed, options);
        row.matched_total = trace.matched_total;
        row.matched_h = trace.matched_h;
        row.matched_l = trace.matched_l;
      } catch (const CapacityError& e) {
        row.error = e.what();
      }
      if (config.record_runtime) {
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      }
    }
  };
  const int workers = std::min<int>(worker_count(config.workers),
                                    static_cast<int>(result.rows.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  const std::size_t per_policy = static_cast<std::size_t>(config.trials);
  const std::size_t per_n = per_policy * config.policies.size();
  for (std::size_t r = 0; r < config.n_ladder.size(); ++r) {
    const int n = config.n_ladder[r];
    for (const auto& [a, b] : config.comparisons) {
      const std::size_t base_a = r * per_n + policy_index(config, a) * per_policy;
      const std::size_t base_b = r * per_n + policy_index(config, b) * per_policy;
      std::vector<double> gaps;
      for (std::size_t t = 0; t < per_policy; ++t) {
        const RunRow& ra = result.rows[base_a + t];
        const RunRow& rb = result.rows[base_b + t];
        if (!ra.matched_total || !rb.matched_total) continue;
        gaps.push_back(static_cast<double>(*ra.matched_total - *rb.matched_total) / n);
      }
      result.gaps.push_back(
          GapEstimate{a, b, n, static_cast<int>(gaps.size()), summarize(gaps)});
    }
  }
  return result;
}

void write_results_csv(std::ostream& out, const ScenarioConfig& config,
                       std::span<const RunRow> rows) {
  out << "scenario,n,rho,c,p,sigma,scheme,S_H,S_L,k,chain,trial,seed,"
         "matched_total,matched_H,matched_L,runtime_ms\n";
  auto opt = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("NA");
  };
  for (const RunRow& row : rows) {
    const bool online = row.spec.scheme == Scheme::kOnlineChain;
    out << config.name << ',' << row.n << ',' << format_number(config.model.rho)
        << ',' << format_number(config.model.c) << ','
        << format_number(config.model.p) << ','
        << format_number(config.model.sigma) << ',' << scheme_name(row.spec.scheme)
        << ',' << (online ? 1 : row.spec.s_high) << ','
        << (online ? 1 : row.spec.s_low) << ',' << row.spec.k << ','
        << (row.spec.with_chain ? 1 : 0) << ',' << row.trial << ',' << row.seed
        << ',' << opt(row.matched_total) << ',' << opt(row.matched_h) << ','
        << opt(row.matched_l) << ',' << format_number(row.runtime_ms) << '\n';
  }
}

void write_gaps_csv(std::ostream& out, std::span<const GapEstimate> gaps) {
  out << "policy_a,policy_b,n,trials,mean_gap_per_n,ci_lo,ci_hi\n";
  for (const GapEstimate& g : gaps) {
    out << g.policy_a << ',' << g.policy_b << ',' << g.n << ',' << g.trials << ','
        << format_number(g.gap_per_n.mean) << ',' << format_number(g.gap_per_n.lo)
        << ',' << format_number(g.gap_per_n.hi) << '\n';
  }
}

std::string_view trend_name(Trend t) {
  switch (t) {
    case Trend::kShrinking:
      return "shrinking";
    case Trend::kStablePositive:
      return "stable-positive";
    case Trend::kStableZero:
      return "stable-zero";
    case Trend::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

Trend classify_trend(std::span<const GapEstimate> rungs, bool all_zero) {
  if (rungs.empty()) return Trend::kInconclusive;
  if (all_zero) return Trend::kStableZero;
  bool decreasing = rungs.size() >= 3;
  for (std::size_t i = 1; i < rungs.size(); ++i) {
    decreasing = decreasing && rungs[i].gap_per_n.mean < rungs[i - 1].gap_per_n.mean;
  }
  if (decreasing && rungs.back().gap_per_n.hi < 0.5 * rungs.front().gap_per_n.mean) {
    return Trend::kShrinking;
  }
  bool separated = true;
  double lo = rungs.front().gap_per_n.mean;
  double hi = lo;
  for (const GapEstimate& g : rungs) {
    separated = separated && g.gap_per_n.excludes_zero();
    lo = std::min(lo, g.gap_per_n.mean);
    hi = std::max(hi, g.gap_per_n.mean);
  }
  if (separated && hi > 0.0 && lo > 0.0 && (hi - lo) / hi < 0.5) {
    return Trend::kStablePositive;
  }
  return Trend::kInconclusive;
}

std::vector<TrendReport> scaling_study(const ScenarioConfig& config,
                                       const ScenarioResult& result) {
  if (config.n_ladder.size() < 3) {
    throw SpecError("scaling study needs at least three rungs");
  }
  for (std::size_t i = 1; i < config.n_ladder.size(); ++i) {
    if (config.n_ladder[i] != 2 * config.n_ladder[i - 1]) {
      throw SpecError("scaling study rungs must double");
    }
  }
  std::vector<TrendReport> reports;
  const std::size_t per_policy = static_cast<std::size_t>(config.trials);
  const std::size_t per_n = per_policy * config.policies.size();
  for (const auto& [a, b] : config.comparisons) {
    TrendReport report{a, b, {}, Trend::kInconclusive};
    bool all_zero = true;
    for (std::size_t r = 0; r < config.n_ladder.size(); ++r) {
      const std::size_t base_a = r * per_n + policy_index(config, a) * per_policy;
      const std::size_t base_b = r * per_n + policy_index(config, b) * per_policy;
      for (std::size_t t = 0; t < per_policy; ++t) {
        const auto& ma = result.rows[base_a + t].matched_total;
        const auto& mb = result.rows[base_b + t].matched_total;
        all_zero = all_zero && ma && mb && *ma == *mb;
      }
      for (const GapEstimate& g : result.gaps) {
        if (g.policy_a == a && g.policy_b == b && g.n == config.n_ladder[r]) {
          report.rungs.push_back(g);
        }
      }
    }
    report.verdict = classify_trend(report.rungs, all_zero);
    reports.push_back(std::move(report));
  }
  return reports;
}

void write_trend_csv(std::ostream& out, std::span<const TrendReport> reports) {
  out << "policy_a,policy_b,verdict\n";
  for (const TrendReport& r : reports) {
    out << r.policy_a << ',' << r.policy_b << ',' << trend_name(r.verdict) << '\n';
  }
}

void write_outputs(const ScenarioConfig& config, const ScenarioResult& result,
                   std::span<const TrendReport> trends) {
  auto open = [](const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(parent, ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
  };
  auto close = [](std::ofstream& out, const std::string& path) {
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
  };
  const std::string& base = config.output_path;
  {
    std::ofstream out = open(base);
    write_results_csv(out, config, result.rows);
    close(out, base);
  }
  {
    const std::string path = base + ".gaps.csv";
    std::ofstream out = open(path);
    write_gaps_csv(out, result.gaps);
    close(out, path);
  }
  if (!trends.empty()) {
    const std::string path = base + ".trend.csv";
    std::ofstream out = open(path);
    write_trend_csv(out, trends);
    close(out, path);
  }
}

}  // namespace kxdyn
