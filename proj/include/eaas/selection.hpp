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

// Spatio-temporal selection of the requests a single provider can serve,
// followed by reliability and reward annotation of the survivors.

#ifndef EAAS_SELECTION_HPP_
#define EAAS_SELECTION_HPP_

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "eaas/model.hpp"
#include "eaas/reliability.hpp"

namespace eaas {

using HistoryMap = std::map<std::string, ConsumerHistory>;
using ScoreMap = std::map<std::string, ReliabilityBreakdown>;

struct SelectionConfig {
  double max_distance_m = kDefaultMaxDistanceM;
  ScoringConfig scoring;
};

inline void validate(const SelectionConfig& c) {
  if (!std::isfinite(c.max_distance_m) || c.max_distance_m <= 0.0) {
    throw Error(ErrorCode::InvalidConfig, "max_distance_m must be positive");
  }
  validate(c.scoring);
}

inline HistoryMap index_histories(const std::vector<ConsumerHistory>& histories) {
  HistoryMap out;
  for (const ConsumerHistory& h : histories) out.insert_or_assign(h.consumer_id, h);
  return out;
}

inline double euclidean_distance(const Location& a, const Location& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Window containment, transfer range and per-request capacity. Inclusive at
// every boundary.
inline bool within_window(const EnergyService& service, const EnergyRequest& req) {
  return req.window_start >= service.window_start && req.window_end <= service.window_end;
}

inline bool within_range(const EnergyService& service, const EnergyRequest& req, double max_distance_m) {
  return euclidean_distance(req.location, service.location) <= max_distance_m;
}

inline bool within_capacity(const EnergyService& service, const EnergyRequest& req) {
  return req.requested_pct <= service.capacity_pct;
}

inline bool is_composable(const EnergyService& service, const EnergyRequest& req, double max_distance_m) {
  return within_window(service, req) && within_range(service, req, max_distance_m) &&
         within_capacity(service, req);
}

// Score for one consumer. Falls back to the configured default when the
// consumer has no history record at all or an empty one.
inline ReliabilityBreakdown lookup_reliability(const std::string& consumer_id, const HistoryMap& histories,
                                               const ScoringConfig& cfg) {
  auto it = histories.find(consumer_id);
  if (it == histories.end()) {
    if (cfg.default_reliability) return default_breakdown(*cfg.default_reliability, cfg.weights);
    throw Error(ErrorCode::MissingHistory, "no history for consumer " + consumer_id);
  }
  return score_consumer(it->second, cfg);
}

inline ReliabilityBreakdown lookup_reliability(const std::string& consumer_id, const ScoreMap& scores,
                                               const ScoringConfig& cfg) {
  auto it = scores.find(consumer_id);
  if (it == scores.end()) {
    if (cfg.default_reliability) return default_breakdown(*cfg.default_reliability, cfg.weights);
    throw Error(ErrorCode::MissingHistory, "no history for consumer " + consumer_id);
  }
  return it->second;
}

// Scores every consumer once; consumers with an empty history get the default
// or are left out so that a later lookup reports them.
inline ScoreMap score_histories(const HistoryMap& histories, const ScoringConfig& cfg) {
  ScoreMap out;
  for (const auto& [id, history] : histories) {
    if (history.sessions.empty() && !cfg.default_reliability) continue;
    out.emplace(id, score_consumer(history, cfg));
  }
  return out;
}

// Reward is the share of the provider's capacity the request consumes; the
// actual reward discounts it by the consumer's reliability.
inline EnergyRequest annotate(EnergyRequest req, const ReliabilityBreakdown& reliability,
                              const EnergyService& service) {
  const double reward = req.requested_pct / service.capacity_pct;
  req.reliability = reliability;
  req.reward = reward;
  req.actual_reward = actual_reward(reward, reliability.total);
  return req;
}

template <typename Source>
std::vector<EnergyRequest> select_requests(const EnergyService& service, const std::vector<EnergyRequest>& requests,
                                           const Source& source, const SelectionConfig& cfg) {
  validate(cfg);
  std::vector<EnergyRequest> out;
  for (const EnergyRequest& req : requests) {
    if (!is_composable(service, req, cfg.max_distance_m)) continue;
    out.push_back(annotate(req, lookup_reliability(req.consumer_id, source, cfg.scoring), service));
  }
  return out;
}

}  // namespace eaas

#endif  // EAAS_SELECTION_HPP_
