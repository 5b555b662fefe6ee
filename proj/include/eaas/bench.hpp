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

// Benchmark harness: for every service-duration bin and run, generate one
// scenario, hand the identical instance to every strategy and average the
// composition metrics per (strategy, bin).

#ifndef EAAS_BENCH_HPP_
#define EAAS_BENCH_HPP_

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "eaas/checker.hpp"
#include "eaas/composer.hpp"
#include "eaas/model.hpp"
#include "eaas/scenario.hpp"
#include "eaas/selection.hpp"
#include "eaas/workload.hpp"

namespace eaas {

struct BenchConfig {
  std::vector<std::int64_t> duration_bins_min{30, 60, 90, 120};
  std::int64_t runs_per_bin = 500;
  std::uint64_t seed = 42;
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  std::size_t bf_limit = kDefaultBruteForceLimit;
  bool bf_adaptive = false;
  GeneratorConfig generator;  // seed is replaced per run
  double max_distance_m = kDefaultMaxDistanceM;
  std::optional<double> default_reliability;
  unsigned threads = 1;
  bool verify = true;  // run the checker on every composition
  bool timing = true;  // false reports zero elapsed time
};

inline void validate(const BenchConfig& c) {
  if (c.runs_per_bin < 1) throw Error(ErrorCode::InvalidConfig, "runs_per_bin must be at least 1");
  if (c.duration_bins_min.empty()) throw Error(ErrorCode::InvalidConfig, "no duration bins");
  if (c.strategies.empty()) throw Error(ErrorCode::InvalidConfig, "no strategies");
  for (std::int64_t bin : c.duration_bins_min) {
    if (bin < c.generator.request_duration_min.lo) {
      throw Error(ErrorCode::InvalidConfig, "bin " + std::to_string(bin) + " is shorter than any request");
    }
  }
  if (c.threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be at least 1");
  validate(c.generator);
}

struct BenchRow {
  Strategy strategy = Strategy::RB;
  std::int64_t duration_bin_min = 0;
  double avg_reliability = 0.0;
  double avg_actual_reward = 0.0;
  double avg_remaining_energy_pct = 0.0;
  double avg_elapsed_micros = 0.0;
  std::int64_t run_count = 0;  // runs that produced a composition
  double avg_candidates = 0.0;  // requests surviving selection, over all runs
};

namespace detail {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct RunMetrics {
  double reliability = 0.0;
  double actual_reward = 0.0;
  double remaining_energy_pct = 0.0;
  double elapsed_micros = 0.0;
};

struct RunOutcome {
  std::size_t candidates = 0;
  std::vector<std::optional<RunMetrics>> per_strategy;  // parallel to cfg.strategies; empty = skipped
};

inline Scenario bench_scenario(const BenchConfig& cfg, std::size_t bin, std::int64_t run) {
  GeneratorConfig g = cfg.generator;
  g.seed = derive_seed(cfg.seed, bin, static_cast<std::uint64_t>(run));
  return generate_scenario(g, 0, cfg.duration_bins_min[bin]);
}

inline RunOutcome run_once(const BenchConfig& cfg, std::size_t bin, std::int64_t run) {
  const Scenario sc = bench_scenario(cfg, bin, run);
  SelectionConfig sel;
  sel.max_distance_m = cfg.max_distance_m;
  sel.scoring = {sc.disruption_config, sc.weights, cfg.default_reliability};
  const HistoryMap histories = index_histories(sc.histories);
  const ScoreMap scores = score_histories(histories, sel.scoring);
  const std::vector<EnergyRequest> selected = select_requests(sc.service, sc.requests, scores, sel);

  RunOutcome out;
  out.candidates = selected.size();
  for (Strategy s : cfg.strategies) {
    std::optional<CompositionResult> result;
    switch (s) {
      case Strategy::RB: result = compose_rb(sc.service, selected); break;
      case Strategy::Greedy: result = compose_greedy(sc.service, selected); break;
      case Strategy::ARB: result = compose_arb_prescored(sc.service, selected); break;
      case Strategy::BruteForce: {
        const std::vector<EnergyRequest> adapted = cfg.bf_adaptive ? adapt(sc.service, selected)
                                                                   : std::vector<EnergyRequest>{};
        const std::vector<EnergyRequest>& input = cfg.bf_adaptive ? adapted : selected;
        if (input.size() <= cfg.bf_limit) result = compose_bruteforce(sc.service, input, cfg.bf_limit);
        break;
      }
    }
    if (!result) {
      out.per_strategy.emplace_back();
      continue;
    }
    if (cfg.verify) {
      auto violations = verify_composition(sc.service, *result, histories, sel);
      for (auto& v : verify_against_requests(*result, sc.requests)) violations.push_back(std::move(v));
      if (!violations.empty()) {
        throw Error(ErrorCode::InvariantViolation,
                    std::string(to_string(s)) + " bin " + std::to_string(cfg.duration_bins_min[bin]) + " run " +
                        std::to_string(run) + ": " + violations.front().kind + " (" + violations.front().detail + ")");
      }
    }
    out.per_strategy.push_back(RunMetrics{result->total_reliability, result->total_actual_reward,
                                          result->remaining_energy_pct,
                                          cfg.timing ? static_cast<double>(result->elapsed.count()) / 1000.0 : 0.0});
  }
  return out;
}

}  // namespace detail

// Rows come back ordered by bin, then by the configured strategy order.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  validate(cfg);
  const std::size_t bins = cfg.duration_bins_min.size();
  const auto runs = static_cast<std::size_t>(cfg.runs_per_bin);
  std::vector<detail::RunOutcome> outcomes(bins * runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < outcomes.size(); k = next++) {
      try {
        outcomes[k] = detail::run_once(cfg, k / runs, static_cast<std::int64_t>(k % runs));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = outcomes.size();
      }
    }
  };
  if (cfg.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRow> rows;
  for (std::size_t b = 0; b < bins; ++b) {
    detail::CompensatedSum candidates;
    for (std::size_t r = 0; r < runs; ++r) candidates.add(static_cast<double>(outcomes[b * runs + r].candidates));
    for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
      detail::CompensatedSum rel, reward, remaining, elapsed;
      std::int64_t count = 0;
      for (std::size_t r = 0; r < runs; ++r) {
        const auto& m = outcomes[b * runs + r].per_strategy[s];
        if (!m) continue;
        rel.add(m->reliability);
        reward.add(m->actual_reward);
        remaining.add(m->remaining_energy_pct);
        elapsed.add(m->elapsed_micros);
        ++count;
      }
      BenchRow row;
      row.strategy = cfg.strategies[s];
      row.duration_bin_min = cfg.duration_bins_min[b];
      row.run_count = count;
      row.avg_candidates = candidates.value() / static_cast<double>(runs);
      if (count > 0) {
        const auto n = static_cast<double>(count);
        row.avg_reliability = rel.value() / n;
        row.avg_actual_reward = reward.value() / n;
        row.avg_remaining_energy_pct = remaining.value() / n;
        row.avg_elapsed_micros = elapsed.value() / n;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { Csv, Json };

inline ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw Error(ErrorCode::InvalidConfig, "unknown report format '" + std::string(name) + "'");
}

inline std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::vector<BenchRow> canonical_order(std::vector<BenchRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.strategy != b.strategy) return to_string(a.strategy) < to_string(b.strategy);
    return a.duration_bin_min < b.duration_bin_min;
  });
  return rows;
}

inline std::string emit_report(const std::vector<BenchRow>& rows, ReportFormat format) {
  if (rows.empty()) throw Error(ErrorCode::InvalidConfig, "no rows to report");
  const std::vector<BenchRow> ordered = canonical_order(rows);
  if (format == ReportFormat::Csv) {
    std::string out =
        "strategy,duration_bin_min,avg_reliability,avg_actual_reward,avg_remaining_energy_pct,"
        "avg_elapsed_micros,run_count,avg_candidates\n";
    for (const BenchRow& r : ordered) {
      out += std::string(to_string(r.strategy)) + ',' + std::to_string(r.duration_bin_min) + ',' +
             format_sig6(r.avg_reliability) + ',' + format_sig6(r.avg_actual_reward) + ',' +
             format_sig6(r.avg_remaining_energy_pct) + ',' + format_sig6(r.avg_elapsed_micros) + ',' +
             std::to_string(r.run_count) + ',' + format_sig6(r.avg_candidates) + '\n';
    }
    return out;
  }
  auto rounded = [](double v) { return std::stod(format_sig6(v)); };
  json arr = json::array();
  for (const BenchRow& r : ordered) {
    arr.push_back(json{{"strategy", std::string(to_string(r.strategy))},
                       {"duration_bin_min", r.duration_bin_min},
                       {"avg_reliability", rounded(r.avg_reliability)},
                       {"avg_actual_reward", rounded(r.avg_actual_reward)},
                       {"avg_remaining_energy_pct", rounded(r.avg_remaining_energy_pct)},
                       {"avg_elapsed_micros", rounded(r.avg_elapsed_micros)},
                       {"run_count", r.run_count},
                       {"avg_candidates", rounded(r.avg_candidates)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace eaas

#endif  // EAAS_BENCH_HPP_
