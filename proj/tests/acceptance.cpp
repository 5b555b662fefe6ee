// Copyright 2026 The EaaS Reliability Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eaas/eaas.hpp"
#include "test_support.hpp"

namespace {

using namespace eaas;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- 1: reliability unit vectors ---------------------------------------------

Outcome unit_vectors() {
  const auto t0 = Clock::now();
  using testing::history_of;
  using testing::ratio_session;
  using testing::session_with_gaps;
  const DisruptionConfig dc;
  std::vector<std::pair<std::string, std::pair<double, double>>> checks;
  auto check = [&](std::string name, double got, double want) { checks.push_back({std::move(name), {got, want}}); };

  auto history_with = [](int total, int ok) {
    std::vector<SessionRecord> s;
    for (int i = 0; i < total; ++i) s.push_back(session_with_gaps(600, {}, 1.0, i < ok ? 1.0 : 0.5));
    return history_of(std::move(s));
  };
  const auto one_gap = classify_disruptions(session_with_gaps(600, {{100, 160}}), dc);
  const auto walk_off = classify_disruptions(session_with_gaps(600, {{200, 600}}), dc);
  check("classify none", static_cast<double>(classify_disruptions(session_with_gaps(600, {}), dc).size()), 0);
  check("classify interior 60 s", one_gap.size() == 1 && one_gap[0] == DisruptionClass::Involuntary, 1);
  check("classify trailing 400 s", walk_off.size() == 1 && walk_off[0] == DisruptionClass::Voluntary, 1);
  check("history 4/4", rel_history(history_with(4, 4)), 1.0);
  check("history 3/4", rel_history(history_with(4, 3)), 3.0 / 4.0);
  check("history 0/4", rel_history(history_with(4, 0)), 0.0);
  check("voluntary perfect", rel_voluntary(history_of({ratio_session(1, 1)})), 1.0);
  check("voluntary half", rel_voluntary(history_of({session_with_gaps(600, {}, 1.0, 0.5, 600, 300)})),
        (0.5 + 0.5) / 2);
  check("voluntary two sessions", rel_voluntary(history_of({ratio_session(1, 1), ratio_session(0.6, 0.8)})),
        ((1.0 + 0.6) / 2 + (1.0 + 0.8) / 2) / 2);
  check("freq none", rel_f(session_with_gaps(600, {}), dc), 1.0);
  check("freq one", rel_f(session_with_gaps(600, {{100, 160}}), dc), 0.7);
  check("freq four", rel_f(session_with_gaps(600, {{10, 70}, {100, 160}, {200, 260}, {300, 360}}), dc), 1.0 / 4);
  check("involuntary none", rel_involuntary(history_of({session_with_gaps(600, {})}), dc), 1.0);
  check("involuntary one 60 s gap", rel_involuntary(history_of({session_with_gaps(600, {{100, 160}})}), dc),
        (0.7 + (1.0 - 60.0 / 600.0)) / 2);
  check("involuntary three 100 s gaps",
        rel_involuntary(history_of({session_with_gaps(600, {{50, 150}, {200, 300}, {350, 450}})}), dc),
        (1.0 / 3 + (1.0 - 300.0 / 600.0)) / 2);
  check("random identical", rel_random(history_of({ratio_session(0.7, 0.4), ratio_session(0.7, 0.4)})), 1.0);
  check("random two-point", rel_random(history_of({ratio_session(0, 0), ratio_session(1, 1)})), 1.0 - (0.5 + 0.5) / 2);
  check("random constant", rel_random(history_of({ratio_session(0.8, 1), ratio_session(0.8, 1), ratio_session(0.8, 1)})),
        1.0);
  check("total perfect", score_consumer(history_with(4, 4), ScoringConfig{}).total, 1.0);
  check("total mixed", weighted_total(0.75, 0.85, 0.8, 0.9, Weights{}), (0.75 + 0.85 + 0.8 + 0.9) / 4);
  check("total isolated", weighted_total(0, 0, 0, 1, Weights{0, 0, 0, 1}), 1.0);
  check("actual reward ER1", actual_reward(0.55, 0.90), 0.55 * 0.90);
  check("actual reward ER2", actual_reward(0.75, 0.25), 0.75 * 0.25);
  check("actual reward zero", actual_reward(0.6, 0.0), 0.0);
  check("ER1 ranks above ER2", actual_reward(0.55, 0.90) > actual_reward(0.75, 0.25), 1);

  int bad = 0;
  std::string first;
  for (const auto& [name, v] : checks) {
    if (!(std::abs(v.first - v.second) <= 1e-9)) {
      if (bad++ == 0) first = fmt(" first: %s got %.12g want %.12g", name.c_str(), v.first, v.second);
    }
  }
  const double elapsed = seconds_since(t0);
  return {bad == 0 && elapsed < 1.0,
          fmt("%zu checks, %d off by more than 1e-9, %.3f s (limit 1 s)", checks.size(), bad, elapsed) + first};
}

// --- 2: frequency score case table --------------------------------------------

Outcome frequency_grid() {
  const auto t0 = Clock::now();
  const DisruptionConfig dc;
  const std::vector<Duration> durations{1, 29, 30, 31, 60, 119, 120, 121, 299, 300, 301, 600};
  int combos = 0;
  int bad = 0;
  for (int f = 0; f <= 5; ++f) {
    for (Duration d : durations) {
      for (bool trailing : {false, true}) {
        if (f == 0 && trailing) continue;
        for (bool leading_noise : {false, true}) {
          std::vector<testing::GapSpec> gaps;
          if (leading_noise) gaps.push_back({10, false});
          for (int k = 0; k < f; ++k) gaps.push_back({d, false});
          if (trailing) gaps.back().trailing = true;
          const double got = rel_f(testing::session_from_specs(gaps), dc);
          if (got != testing::rel_f_case_table(gaps, dc)) ++bad;
          ++combos;
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {combos >= 200 && bad == 0 && elapsed < 1.0,
          fmt("%d combinations, %d mismatches, %.3f s (limit 1 s)", combos, bad, elapsed)};
}

// --- 3: oracle dominance -----------------------------------------------------

struct Candidates {
  EnergyService service;
  std::vector<EnergyRequest> selected;
  HistoryMap histories;
  std::vector<EnergyRequest> offered;
};

Candidates candidates_for(std::uint64_t index, std::size_t cap) {
  GeneratorConfig gen;
  gen.seed = 2024;
  Scenario sc = generate_scenario(gen, index);
  Candidates c;
  c.service = sc.service;
  c.histories = index_histories(sc.histories);
  c.selected = select_requests(sc.service, sc.requests, c.histories, SelectionConfig{});
  if (c.selected.size() > cap) c.selected.resize(cap);
  c.offered = std::move(sc.requests);
  return c;
}

Outcome oracle_dominance() {
  const auto t0 = Clock::now();
  constexpr int kScenarios = 2000;
  int rb_bad = 0, greedy_bad = 0, arb_bad = 0, arb_above_plain_bf = 0, largest = 0;
  for (int i = 0; i < kScenarios; ++i) {
    const Candidates c = candidates_for(static_cast<std::uint64_t>(i), 12);
    largest = std::max(largest, static_cast<int>(c.selected.size()));
    const double bf = compose_bruteforce(c.service, c.selected, 12).total_actual_reward;
    if (compose_rb(c.service, c.selected).total_actual_reward > bf + 1e-9) ++rb_bad;
    if (compose_greedy(c.service, c.selected).total_actual_reward > bf + 1e-9) ++greedy_bad;
    // ARB schedules downsized, re-annotated copies; the oracle searches those.
    const double arb = compose_arb_prescored(c.service, c.selected).total_actual_reward;
    const double bf_adapted = compose_bruteforce(c.service, adapt(c.service, c.selected), 12).total_actual_reward;
    if (arb > bf_adapted + 1e-9) ++arb_bad;
    if (arb > bf + 1e-9) ++arb_above_plain_bf;
  }
  const double elapsed = seconds_since(t0);
  return {rb_bad == 0 && greedy_bad == 0 && arb_bad == 0 && elapsed < 120.0,
          fmt("%d scenarios (<= %d candidates); runs above BF: rb %d, greedy %d, arb %d (BF over ARB's downsized "
              "inputs); arb above BF over the original inputs in %d runs; %.1f s (limit 120 s)",
              kScenarios, largest, rb_bad, greedy_bad, arb_bad, arb_above_plain_bf, elapsed)};
}

// --- 4: feasibility ----------------------------------------------------------

Outcome feasibility() {
  const auto t0 = Clock::now();
  GeneratorConfig gen;
  gen.seed = 77;
  ComposeOptions opts;
  opts.bf_limit = 64;
  int checked = 0;
  int violations = 0;
  std::string first;
  for (std::uint64_t index = 0; checked < 10000; ++index) {
    const Scenario sc = generate_scenario(gen, index);
    const HistoryMap hist = index_histories(sc.histories);
    SelectionConfig sel;
    sel.scoring.disruption = sc.disruption_config;
    sel.scoring.weights = sc.weights;
    for (Strategy s : kAllStrategies) {
      const CompositionResult r = compose(s, sc.service, sc.requests, hist, sel, opts);
      auto v = verify_composition(sc.service, r, hist, sel);
      for (auto& x : verify_against_requests(r, sc.requests)) v.push_back(std::move(x));
      if (!v.empty() && violations == 0) first = " first: " + v[0].kind + " (" + v[0].detail + ")";
      violations += static_cast<int>(v.size());
      ++checked;
    }
  }
  const double elapsed = seconds_since(t0);
  return {violations == 0 && elapsed < 300.0,
          fmt("%d outputs checked, %d violations, %.1f s (limit 300 s)", checked, violations, elapsed) + first};
}

// --- 5 to 8: benchmark trends ------------------------------------------------

using Table = std::map<Strategy, std::map<std::int64_t, BenchRow>>;

struct BenchRun {
  Table table;
  std::vector<std::int64_t> bins;
  bool complete = true;
  double seconds = 0.0;
  std::string csv;
};

BenchRun trend_bench() {
  BenchConfig cfg;
  cfg.seed = 42;
  cfg.runs_per_bin = 500;
  cfg.duration_bins_min = {30, 60, 90, 120};
  cfg.bf_limit = 64;
  cfg.threads = 1;
  const auto t0 = Clock::now();
  const auto rows = run_bench(cfg);
  BenchRun out;
  out.seconds = seconds_since(t0);
  out.bins = cfg.duration_bins_min;
  for (const BenchRow& r : rows) {
    out.table[r.strategy][r.duration_bin_min] = r;
    if (r.run_count != cfg.runs_per_bin) out.complete = false;
  }
  out.csv = emit_report(rows, ReportFormat::Csv);
  return out;
}

const std::vector<Strategy> kOrder{Strategy::ARB, Strategy::BruteForce, Strategy::Greedy, Strategy::RB};

std::string name(Strategy s) { return std::string(to_string(s)); }

// Per-strategy monotonicity of one column across bins.
std::vector<std::string> trend_breaks(const BenchRun& b, double BenchRow::*field, bool increasing) {
  std::vector<std::string> out;
  for (Strategy s : kOrder) {
    for (std::size_t i = 1; i < b.bins.size(); ++i) {
      const double prev = b.table.at(s).at(b.bins[i - 1]).*field;
      const double cur = b.table.at(s).at(b.bins[i]).*field;
      if (increasing ? cur < prev : cur > prev) {
        out.push_back(fmt("%s %lld->%lld %.6g->%.6g", name(s).c_str(), static_cast<long long>(b.bins[i - 1]),
                          static_cast<long long>(b.bins[i]), prev, cur));
      }
    }
  }
  return out;
}

// Bins where `lhs` is not at least (or at most) `rhs` on a column.
std::vector<std::string> order_breaks(const BenchRun& b, double BenchRow::*field, Strategy lhs, Strategy rhs,
                                      bool lhs_at_least) {
  std::vector<std::string> out;
  for (std::int64_t bin : b.bins) {
    const double l = b.table.at(lhs).at(bin).*field;
    const double r = b.table.at(rhs).at(bin).*field;
    if (lhs_at_least ? l < r : l > r) {
      out.push_back(fmt("bin %lld %s %.6g vs %s %.6g", static_cast<long long>(bin), name(lhs).c_str(), l,
                        name(rhs).c_str(), r));
    }
  }
  return out;
}

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out.empty() ? "none" : out;
}

Outcome reliability_trend(const BenchRun& b) {
  const auto flat = trend_breaks(b, &BenchRow::avg_reliability, true);
  std::vector<std::string> below;
  for (Strategy s : {Strategy::RB, Strategy::Greedy, Strategy::BruteForce}) {
    for (auto& x : order_breaks(b, &BenchRow::avg_reliability, Strategy::ARB, s, true)) below.push_back(x);
  }
  return {b.complete && flat.empty() && below.empty() && b.seconds < 600.0,
          "decreases: " + joined(flat) + " | arb below another strategy: " + joined(below)};
}

Outcome reward_trend(const BenchRun& b) {
  std::vector<std::string> breaks;
  for (auto& x : order_breaks(b, &BenchRow::avg_actual_reward, Strategy::Greedy, Strategy::RB, false)) breaks.push_back(x);
  for (auto& x : order_breaks(b, &BenchRow::avg_actual_reward, Strategy::RB, Strategy::BruteForce, false)) breaks.push_back(x);
  std::vector<std::string> arb;
  for (auto& x : order_breaks(b, &BenchRow::avg_actual_reward, Strategy::ARB, Strategy::BruteForce, true)) arb.push_back(x);
  return {b.complete && breaks.empty() && arb.empty(),
          "greedy<=rb<=bf breaks: " + joined(breaks) + " | arb>=bf breaks: " + joined(arb)};
}

Outcome remaining_trend(const BenchRun& b) {
  const auto rising = trend_breaks(b, &BenchRow::avg_remaining_energy_pct, false);
  std::vector<std::string> not_lowest;
  for (Strategy s : {Strategy::RB, Strategy::Greedy, Strategy::BruteForce}) {
    for (auto& x : order_breaks(b, &BenchRow::avg_remaining_energy_pct, Strategy::ARB, s, false)) {
      not_lowest.push_back(x);
    }
  }
  return {b.complete && rising.empty() && not_lowest.empty(),
          "increases: " + joined(rising) + " | arb not lowest: " + joined(not_lowest)};
}

Outcome timing_trend(const BenchRun& b) {
  std::vector<std::string> breaks;
  int timed_bins = 0;
  for (std::int64_t bin : b.bins) {
    const double bf = b.table.at(Strategy::BruteForce).at(bin).avg_elapsed_micros;
    const double rb = b.table.at(Strategy::RB).at(bin).avg_elapsed_micros;
    const double greedy = b.table.at(Strategy::Greedy).at(bin).avg_elapsed_micros;
    const double arb = b.table.at(Strategy::ARB).at(bin).avg_elapsed_micros;
    if (std::max(rb, greedy) > 5.0 * std::min(rb, greedy)) {
      breaks.push_back(fmt("bin %lld rb %.3g greedy %.3g differ by more than 5x", static_cast<long long>(bin), rb, greedy));
    }
    if (b.table.at(Strategy::BruteForce).at(bin).avg_candidates < 10.0) continue;
    ++timed_bins;
    if (!(bf > rb && bf > greedy && bf > arb)) {
      breaks.push_back(fmt("bin %lld bf %.3g not above rb %.3g arb %.3g greedy %.3g", static_cast<long long>(bin), bf,
                           rb, arb, greedy));
    }
  }
  return {b.complete && breaks.empty(),
          fmt("%d bins with >= 10 mean candidates; ", timed_bins) + "breaks: " + joined(breaks)};
}

// --- 9: determinism ----------------------------------------------------------

std::string run_cli(const std::string& args, const std::string& out) {
  const std::string cmd = std::string(EAAS_CLI_PATH) + " bench " + args + " --out " + out;
  if (std::system(cmd.c_str()) != 0) return {};
  std::ifstream in(out, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_timing_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    cols.erase(cols.begin() + 5);
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
  }
  return out;
}

Outcome determinism() {
  const std::string dir = std::filesystem::temp_directory_path().string();
  const std::string flags = "--seed 42 --runs 100 --bins 30,60,90,120 --bf-limit 64";
  const std::string a = run_cli(flags + " --no-timing", dir + "/eaas_accept_a.csv");
  const std::string b = run_cli(flags + " --no-timing", dir + "/eaas_accept_b.csv");
  const std::string c = run_cli(flags, dir + "/eaas_accept_c.csv");
  const std::string d = run_cli(flags, dir + "/eaas_accept_d.csv");
  const bool identical = !a.empty() && a == b;
  const bool timed_stable = !c.empty() && without_timing_column(c) == without_timing_column(d) &&
                            without_timing_column(c) == without_timing_column(a);
  return {identical && timed_stable,
          fmt("untimed CSV byte-identical: %s (%zu bytes); timed runs identical outside elapsed column: %s",
              identical ? "yes" : "no", a.size(), timed_stable ? "yes" : "no")};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const char* id, const char* title, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << title << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
  };
  try {
    report("AC1", "reliability unit vectors", unit_vectors());
    report("AC2", "frequency score case table", frequency_grid());
    report("AC3", "brute-force oracle dominance", oracle_dominance());
    report("AC4", "checker feasibility", feasibility());
    const BenchRun bench = trend_bench();
    std::cout << "      benchmark: seed 42, 500 runs/bin, " << fmt("%.1f s", bench.seconds)
              << (bench.complete ? "" : ", INCOMPLETE (brute force skipped in some runs)") << "\n";
    std::istringstream csv(bench.csv);
    for (std::string line; std::getline(csv, line);) std::cout << "      " << line << "\n";
    report("AC5", "reliability trend", reliability_trend(bench));
    report("AC6", "actual reward trend", reward_trend(bench));
    report("AC7", "remaining energy trend", remaining_trend(bench));
    report("AC8", "elapsed time trend", timing_trend(bench));
    report("AC9", "bench determinism", determinism());
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance run aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : fmt("%d criteria failed", failures)) << std::endl;
  return failures == 0 ? 0 : 1;
}
