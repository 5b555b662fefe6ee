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

// Consumer reliability model. A consumer's history of past energy requests is
// reduced to four component scores (history, voluntary, involuntary, random
// behaviour) which are combined by a weighted sum into one score in [0,1].

#ifndef EAAS_RELIABILITY_HPP_
#define EAAS_RELIABILITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eaas/model.hpp"

namespace eaas {

enum class DisruptionClass { Noise, Involuntary, Voluntary };

inline std::string_view to_string(DisruptionClass c) {
  switch (c) {
    case DisruptionClass::Noise: return "noise";
    case DisruptionClass::Involuntary: return "involuntary";
    case DisruptionClass::Voluntary: return "voluntary";
  }
  return "unknown";
}

// Everything needed to turn a history into a ReliabilityBreakdown.
struct ScoringConfig {
  DisruptionConfig disruption;
  Weights weights;
  // Score used for consumers with no (or an empty) history. Unset means such
  // consumers are an error.
  std::optional<double> default_reliability;
};

inline void validate(const ScoringConfig& c) {
  validate(c.disruption);
  validate(c.weights);
  if (c.default_reliability && !detail::is_unit(*c.default_reliability)) {
    throw Error(ErrorCode::InvalidConfig, "default reliability outside [0,1]");
  }
}

// A disconnection is trailing when it is the last one and runs until the
// session ends, i.e. the consumer never reconnected.
inline bool is_trailing(const SessionRecord& session, std::size_t index) {
  return index + 1 == session.disconnections.size() &&
         session.disconnections[index].end >= session.session_end;
}

inline DisruptionClass classify(Duration gap, bool trailing, const DisruptionConfig& cfg) {
  if (gap < cfg.delta_sec) return DisruptionClass::Noise;
  if (trailing && gap >= cfg.epsilon_sec) return DisruptionClass::Voluntary;
  return DisruptionClass::Involuntary;
}

inline std::vector<DisruptionClass> classify_disruptions(const SessionRecord& session,
                                                         const DisruptionConfig& cfg) {
  std::vector<DisruptionClass> out;
  out.reserve(session.disconnections.size());
  for (std::size_t i = 0; i < session.disconnections.size(); ++i) {
    out.push_back(classify(session.disconnections[i].duration(), is_trailing(session, i), cfg));
  }
  return out;
}

// Number of involuntary disconnections in a session. Noise is ignored and a
// voluntary (terminal) disconnection is accounted for by the voluntary score.
inline int involuntary_count(const SessionRecord& session, const DisruptionConfig& cfg) {
  int f = 0;
  for (DisruptionClass c : classify_disruptions(session, cfg)) {
    if (c == DisruptionClass::Involuntary) ++f;
  }
  return f;
}

// Frequency score of one session: 1 without disruption, 0.7 for a single
// involuntary disconnection, 1/f otherwise.
inline double rel_f(const SessionRecord& session, const DisruptionConfig& cfg) {
  const int f = involuntary_count(session, cfg);
  if (f == 0) return 1.0;
  if (f == 1) return 0.7;
  return 1.0 / static_cast<double>(f);
}

// Duration score of one session: the fraction of the session not lost to
// (non-noise) disconnections.
inline double rel_d(const SessionRecord& session, const DisruptionConfig& cfg) {
  const Duration length = session.session_end - session.session_start;
  if (length <= 0) throw Error(ErrorCode::DegenerateSession, "session has zero length");
  Duration lost = 0;
  for (const Disconnection& d : session.disconnections) {
    if (d.duration() >= cfg.delta_sec) lost += d.duration();
  }
  return 1.0 - static_cast<double>(lost) / static_cast<double>(length);
}

inline double energy_ratio(const SessionRecord& s) { return s.received_energy / s.requested_energy; }

// Overstaying never counts for more than a complete stay.
inline double time_ratio(const SessionRecord& s) {
  return std::min(static_cast<double>(s.stay_time) / static_cast<double>(s.required_time), 1.0);
}

namespace detail {

inline void require_sessions(const ConsumerHistory& h) {
  if (h.sessions.empty()) throw Error(ErrorCode::EmptyHistory, "consumer " + h.consumer_id + " has no history");
}

template <typename F>
double mean_over(const std::vector<SessionRecord>& sessions, F&& f) {
  double sum = 0.0;
  for (const SessionRecord& s : sessions) sum += f(s);
  return sum / static_cast<double>(sessions.size());
}

// Population standard deviation.
template <typename F>
double stddev_over(const std::vector<SessionRecord>& sessions, F&& f) {
  const double mean = mean_over(sessions, f);
  double sq = 0.0;
  for (const SessionRecord& s : sessions) {
    const double dev = f(s) - mean;
    sq += dev * dev;
  }
  return std::sqrt(sq / static_cast<double>(sessions.size()));
}

}  // namespace detail

inline double rel_history(const ConsumerHistory& history) {
  detail::require_sessions(history);
  const auto successes = std::count_if(history.sessions.begin(), history.sessions.end(),
                                       [](const SessionRecord& s) { return s.success; });
  return static_cast<double>(successes) / static_cast<double>(history.sessions.size());
}

inline double rel_energy(const ConsumerHistory& history) {
  detail::require_sessions(history);
  return detail::mean_over(history.sessions, energy_ratio);
}

inline double rel_time(const ConsumerHistory& history) {
  detail::require_sessions(history);
  return detail::mean_over(history.sessions, time_ratio);
}

inline double rel_voluntary(const ConsumerHistory& history) {
  return (rel_energy(history) + rel_time(history)) / 2.0;
}

inline double rel_freq(const ConsumerHistory& history, const DisruptionConfig& cfg) {
  detail::require_sessions(history);
  return detail::mean_over(history.sessions, [&](const SessionRecord& s) { return rel_f(s, cfg); });
}

inline double rel_dur(const ConsumerHistory& history, const DisruptionConfig& cfg) {
  detail::require_sessions(history);
  return detail::mean_over(history.sessions, [&](const SessionRecord& s) { return rel_d(s, cfg); });
}

inline double rel_involuntary(const ConsumerHistory& history, const DisruptionConfig& cfg) {
  return (rel_freq(history, cfg) + rel_dur(history, cfg)) / 2.0;
}

inline double energy_variation(const ConsumerHistory& history) {
  detail::require_sessions(history);
  return detail::stddev_over(history.sessions, energy_ratio);
}

inline double time_variation(const ConsumerHistory& history) {
  detail::require_sessions(history);
  return detail::stddev_over(history.sessions, time_ratio);
}

inline double rel_random(const ConsumerHistory& history) {
  return (2.0 - (energy_variation(history) + time_variation(history))) / 2.0;
}

inline double weighted_total(double history, double voluntary, double involuntary,
                             double random_behavior, const Weights& w) {
  return w.history * history + w.voluntary * voluntary + w.involuntary * involuntary +
         w.random_behavior * random_behavior;
}

inline ReliabilityBreakdown make_breakdown(double history, double voluntary, double involuntary,
                                           double random_behavior, const Weights& w) {
  return {history, voluntary, involuntary, random_behavior,
          weighted_total(history, voluntary, involuntary, random_behavior, w), w};
}

inline ReliabilityBreakdown default_breakdown(double score, const Weights& w) {
  return make_breakdown(score, score, score, score, w);
}

inline ReliabilityBreakdown score_consumer(const ConsumerHistory& history, const ScoringConfig& cfg) {
  validate(cfg.weights);
  if (history.sessions.empty()) {
    if (cfg.default_reliability) return default_breakdown(*cfg.default_reliability, cfg.weights);
    throw Error(ErrorCode::EmptyHistory, "consumer " + history.consumer_id + " has no history");
  }
  return make_breakdown(rel_history(history), rel_voluntary(history),
                        rel_involuntary(history, cfg.disruption), rel_random(history), cfg.weights);
}

inline double actual_reward(double reward, double total_reliability) { return reward * total_reliability; }

}  // namespace eaas

#endif  // EAAS_RELIABILITY_HPP_
