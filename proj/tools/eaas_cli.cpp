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

// eaas: generate scenarios, score consumers, compose requests, verify
// compositions and run the strategy benchmark.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eaas/eaas.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

eaas::Weights parse_weights(const std::string& s) {
  const auto parts = split_list(s);
  if (parts.size() != 4) throw eaas::Error(eaas::ErrorCode::BadWeights, "--weights needs four values");
  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i) w[i] = std::stod(parts[i]);
  return eaas::Weights::from_array(w);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    eaas::write_text_file(out_path, text);
  }
}

struct CommonScoring {
  std::string weights;
  std::optional<eaas::Duration> delta, epsilon, alpha;
  std::optional<double> default_reliability;

  void attach(CLI::App* cmd) {
    cmd->add_option("--weights", weights, "w_history,w_voluntary,w_involuntary,w_random");
    cmd->add_option("--delta", delta, "noise floor in seconds");
    cmd->add_option("--epsilon", epsilon, "voluntary threshold in seconds");
    cmd->add_option("--alpha", alpha, "trailing-disconnection threshold in seconds");
    cmd->add_option("--default-reliability", default_reliability, "score for consumers without history");
  }

  eaas::ScoringConfig resolve(const eaas::Scenario& sc) const {
    eaas::ScoringOverrides o;
    if (!weights.empty()) o.weights = parse_weights(weights);
    o.delta_sec = delta;
    o.epsilon_sec = epsilon;
    o.alpha_sec = alpha;
    o.default_reliability = default_reliability;
    return eaas::scoring_config(sc, o);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reliability-based composition of crowdsourced IoT energy requests"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic scenario or ingest transactions");
  std::uint64_t gen_seed = 42;
  std::string gen_out, gen_config, gen_ingest;
  std::uint64_t gen_index = 0;
  std::int64_t gen_duration = 0;
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "scenario file to write")->required();
  gen->add_option("--config", gen_config, "generator configuration JSON");
  gen->add_option("--ingest", gen_ingest, "transactions CSV to turn into requests");
  gen->add_option("--index", gen_index, "service number within the batch");
  gen->add_option("--duration-min", gen_duration, "fix the service window length in minutes");

  // score
  auto* score = app.add_subcommand("score", "print per-consumer reliability as CSV");
  std::string score_scenario, score_out;
  CommonScoring score_opts;
  score->add_option("--scenario", score_scenario, "scenario file")->required();
  score->add_option("--out", score_out, "write CSV here instead of stdout");
  score_opts.attach(score);

  // compose
  auto* comp = app.add_subcommand("compose", "compose one scenario with one strategy");
  std::string comp_scenario, comp_strategy = "rb", comp_out;
  std::size_t comp_bf_limit = eaas::kDefaultBruteForceLimit;
  bool comp_bf_adaptive = false;
  double comp_distance = eaas::kDefaultMaxDistanceM;
  CommonScoring comp_opts;
  comp->add_option("--scenario", comp_scenario, "scenario file")->required();
  comp->add_option("--strategy", comp_strategy, "rb|arb|greedy|bf")->required();
  comp->add_option("--bf-limit", comp_bf_limit, "largest candidate set brute force accepts");
  comp->add_flag("--bf-adaptive", comp_bf_adaptive, "brute force over downsized requests");
  comp->add_option("--max-distance", comp_distance, "transfer range in meters");
  comp->add_option("--out", comp_out, "write JSON here instead of stdout");
  comp_opts.attach(comp);

  // verify
  auto* ver = app.add_subcommand("verify", "check a composition against its scenario");
  std::string ver_scenario, ver_result;
  double ver_distance = eaas::kDefaultMaxDistanceM;
  CommonScoring ver_opts;
  ver->add_option("--scenario", ver_scenario, "scenario file")->required();
  ver->add_option("--result", ver_result, "composition JSON from `compose`")->required();
  ver->add_option("--max-distance", ver_distance, "transfer range in meters");
  ver_opts.attach(ver);

  // bench
  auto* bench = app.add_subcommand("bench", "compare strategies across service durations");
  eaas::BenchConfig bench_cfg;
  std::string bench_bins = "30,60,90,120", bench_strategies = "rb,arb,greedy,bf", bench_out, bench_format = "csv",
              bench_config;
  bool bench_no_timing = false;
  bench->add_option("--seed", bench_cfg.seed, "random seed");
  bench->add_option("--runs", bench_cfg.runs_per_bin, "runs per duration bin");
  bench->add_option("--bins", bench_bins, "service durations in minutes");
  bench->add_option("--strategies", bench_strategies, "subset of rb,arb,greedy,bf");
  bench->add_option("--bf-limit", bench_cfg.bf_limit, "largest candidate set brute force accepts");
  bench->add_flag("--bf-adaptive", bench_cfg.bf_adaptive, "brute force over downsized requests");
  bench->add_option("--threads", bench_cfg.threads, "worker threads");
  bench->add_option("--config", bench_config, "generator configuration JSON");
  bench->add_option("--default-reliability", bench_cfg.default_reliability, "score for consumers without history");
  bench->add_flag("--no-timing", bench_no_timing, "report zero elapsed time (byte-stable output)");
  bench->add_option("--out", bench_out, "report file")->required();
  bench->add_option("--format", bench_format, "csv|json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      eaas::GeneratorConfig cfg;
      if (!gen_config.empty()) eaas::read_json_file(gen_config).get_to(cfg);
      cfg.seed = gen_seed;
      const eaas::Scenario sc = gen_ingest.empty() ? eaas::generate_scenario(cfg, gen_index, gen_duration)
                                                   : eaas::ingest_transactions(gen_ingest, cfg);
      eaas::save_scenario(gen_out, sc);
      return 0;
    }
    if (*score) {
      const eaas::Scenario sc = eaas::load_scenario(score_scenario);
      emit(eaas::score_csv(sc, score_opts.resolve(sc)), score_out);
      return 0;
    }
    if (*comp) {
      const eaas::Scenario sc = eaas::load_scenario(comp_scenario);
      eaas::SelectionConfig sel{comp_distance, comp_opts.resolve(sc)};
      const auto result = eaas::compose_scenario(sc, eaas::parse_strategy(comp_strategy), sel,
                                                 {comp_bf_limit, comp_bf_adaptive});
      emit(eaas::composition_json(result, sel), comp_out);
      return 0;
    }
    if (*ver) {
      const eaas::Scenario sc = eaas::load_scenario(ver_scenario);
      eaas::SelectionConfig sel{ver_distance, ver_opts.resolve(sc)};
      eaas::CompositionResult result;
      try {
        result = eaas::read_json_file(ver_result).get<eaas::CompositionResult>();
      } catch (const eaas::json::exception& e) {
        throw eaas::Error(eaas::ErrorCode::MalformedScenario, ver_result + ": " + e.what());
      }
      const auto violations = eaas::verify_scenario_result(sc, result, sel);
      for (const auto& v : violations) std::cout << v.kind << ": " << v.detail << "\n";
      if (violations.empty()) std::cout << "ok\n";
      return violations.empty() ? 0 : 1;
    }
    if (*bench) {
      if (!bench_config.empty()) eaas::read_json_file(bench_config).get_to(bench_cfg.generator);
      bench_cfg.duration_bins_min.clear();
      for (const auto& b : split_list(bench_bins)) bench_cfg.duration_bins_min.push_back(std::stoll(b));
      bench_cfg.strategies.clear();
      for (const auto& s : split_list(bench_strategies)) bench_cfg.strategies.push_back(eaas::parse_strategy(s));
      bench_cfg.timing = !bench_no_timing;
      const auto rows = eaas::run_bench(bench_cfg);
      eaas::write_text_file(bench_out, eaas::emit_report(rows, eaas::parse_report_format(bench_format)));
      return 0;
    }
  } catch (const eaas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
