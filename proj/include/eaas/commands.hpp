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

// The work behind each command-line subcommand, kept free of argument
// parsing so it can be driven from tests.

#ifndef EAAS_COMMANDS_HPP_
#define EAAS_COMMANDS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "eaas/bench.hpp"
#include "eaas/checker.hpp"
#include "eaas/composer.hpp"
#include "eaas/reliability.hpp"
#include "eaas/scenario.hpp"
#include "eaas/selection.hpp"
#include "eaas/workload.hpp"

namespace eaas {

// Overrides applied on top of the configuration stored in a scenario file.
struct ScoringOverrides {
  std::optional<Weights> weights;
  std::optional<Duration> delta_sec;
  std::optional<Duration> epsilon_sec;
  std::optional<Duration> alpha_sec;
  std::optional<double> default_reliability;
};

inline ScoringConfig scoring_config(const Scenario& sc, const ScoringOverrides& o) {
  ScoringConfig cfg{sc.disruption_config, sc.weights, o.default_reliability};
  if (o.weights) cfg.weights = *o.weights;
  if (o.delta_sec) cfg.disruption.delta_sec = *o.delta_sec;
  if (o.epsilon_sec) cfg.disruption.epsilon_sec = *o.epsilon_sec;
  if (o.alpha_sec) cfg.disruption.alpha_sec = *o.alpha_sec;
  validate(cfg);
  return cfg;
}

// One CSV row per consumer history, in file order.
inline std::string score_csv(const Scenario& sc, const ScoringConfig& cfg) {
  std::string out = "consumer_id,rel_history,rel_voluntary,rel_involuntary,rel_random,total\n";
  for (const ConsumerHistory& h : sc.histories) {
    const ReliabilityBreakdown r = score_consumer(h, cfg);
    out += h.consumer_id + ',' + format_sig6(r.history) + ',' + format_sig6(r.voluntary) + ',' +
           format_sig6(r.involuntary) + ',' + format_sig6(r.random_behavior) + ',' + format_sig6(r.total) + '\n';
  }
  return out;
}

inline CompositionResult compose_scenario(const Scenario& sc, Strategy strategy, const SelectionConfig& cfg,
                                          const ComposeOptions& opts = {}) {
  return compose(strategy, sc.service, sc.requests, index_histories(sc.histories), cfg, opts);
}

inline std::string composition_json(const CompositionResult& result, const SelectionConfig& cfg) {
  json j = result;
  j["disruption_config"] = cfg.scoring.disruption;
  j["weights"] = cfg.scoring.weights;
  return j.dump(2) + "\n";
}

inline std::vector<Violation> verify_scenario_result(const Scenario& sc, const CompositionResult& result,
                                                     const SelectionConfig& cfg) {
  std::vector<Violation> out = verify_composition(sc.service, result, index_histories(sc.histories), cfg);
  for (Violation& v : verify_against_requests(result, sc.requests)) out.push_back(std::move(v));
  return out;
}

}  // namespace eaas

#endif  // EAAS_COMMANDS_HPP_
