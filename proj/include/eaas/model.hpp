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

// Domain types shared by every module: energy services, energy requests,
// consumer session histories and composition results.

#ifndef EAAS_MODEL_HPP_
#define EAAS_MODEL_HPP_

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eaas {

enum class ErrorCode {
  InvalidWindow,
  InvalidAmount,
  InvalidSession,
  InvalidConfig,
  BadWeights,
  EmptyHistory,
  DegenerateSession,
  MissingHistory,
  TooManyCandidates,
  MalformedCSV,
  MalformedScenario,
  InvariantViolation,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::InvalidAmount: return "InvalidAmount";
    case ErrorCode::InvalidSession: return "InvalidSession";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::DegenerateSession: return "DegenerateSession";
    case ErrorCode::MissingHistory: return "MissingHistory";
    case ErrorCode::TooManyCandidates: return "TooManyCandidates";
    case ErrorCode::MalformedCSV: return "MalformedCSV";
    case ErrorCode::MalformedScenario: return "MalformedScenario";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Seconds since an arbitrary epoch. Durations are also whole seconds.
using Timestamp = std::int64_t;
using Duration = std::int64_t;

// Wireless transfer range of an over-the-air charger (15 ft).
inline constexpr double kDefaultMaxDistanceM = 4.572;

struct Location {
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  friend bool operator==(const Location&, const Location&) = default;
};

// A provider's advertisement of shareable energy.
struct EnergyService {
  std::string service_id;
  std::string provider_id;
  double capacity_pct = 0.0;  // fraction of a full battery, (0,1]
  Location location;
  Timestamp window_start = 0;
  Timestamp window_end = 0;

  Duration window_length() const { return window_end - window_start; }

  friend bool operator==(const EnergyService&, const EnergyService&) = default;
};

struct Weights {
  double history = 0.25;
  double voluntary = 0.25;
  double involuntary = 0.25;
  double random_behavior = 0.25;

  std::array<double, 4> as_array() const {
    return {history, voluntary, involuntary, random_behavior};
  }
  static Weights from_array(const std::array<double, 4>& w) {
    return {w[0], w[1], w[2], w[3]};
  }

  friend bool operator==(const Weights&, const Weights&) = default;
};

struct ReliabilityBreakdown {
  double history = 0.0;
  double voluntary = 0.0;
  double involuntary = 0.0;
  double random_behavior = 0.0;
  double total = 0.0;
  Weights weights;

  friend bool operator==(const ReliabilityBreakdown&, const ReliabilityBreakdown&) = default;
};

// A consumer's demand for energy. The trailing optional fields are filled in
// by the selection phase.
struct EnergyRequest {
  std::string request_id;
  std::string consumer_id;
  double requested_pct = 0.0;  // fraction of a full battery, (0,1]
  Location location;
  Timestamp window_start = 0;
  Timestamp window_end = 0;
  std::optional<ReliabilityBreakdown> reliability;
  std::optional<double> reward;
  std::optional<double> actual_reward;

  Duration window_length() const { return window_end - window_start; }

  friend bool operator==(const EnergyRequest&, const EnergyRequest&) = default;
};

struct Disconnection {
  Timestamp start = 0;
  Timestamp end = 0;

  Duration duration() const { return end - start; }

  friend bool operator==(const Disconnection&, const Disconnection&) = default;
};

// One past energy request of a consumer, as observed by the coordinator.
struct SessionRecord {
  double requested_energy = 0.0;
  double received_energy = 0.0;
  Duration required_time = 0;  // seconds needed to receive everything requested
  Duration stay_time = 0;      // seconds actually connected
  Timestamp session_start = 0;
  Timestamp session_end = 0;
  std::vector<Disconnection> disconnections;  // ordered, disjoint
  bool success = false;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

struct ConsumerHistory {
  std::string consumer_id;
  std::vector<SessionRecord> sessions;

  friend bool operator==(const ConsumerHistory&, const ConsumerHistory&) = default;
};

// Thresholds that classify a disconnection: noise floor (delta), voluntary
// threshold (epsilon) and trailing-gap threshold (alpha).
struct DisruptionConfig {
  Duration delta_sec = 30;
  Duration epsilon_sec = 300;
  Duration alpha_sec = 120;

  friend bool operator==(const DisruptionConfig&, const DisruptionConfig&) = default;
};

enum class Strategy { RB, ARB, Greedy, BruteForce };

inline constexpr std::array<Strategy, 4> kAllStrategies = {
    Strategy::RB, Strategy::ARB, Strategy::Greedy, Strategy::BruteForce};

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::RB: return "rb";
    case Strategy::ARB: return "arb";
    case Strategy::Greedy: return "greedy";
    case Strategy::BruteForce: return "bf";
  }
  return "unknown";
}

inline Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown strategy '" + std::string(name) + "'");
}

struct ScheduledRequest {
  EnergyRequest request;
  Timestamp scheduled_start = 0;
  Timestamp scheduled_end = 0;

  friend bool operator==(const ScheduledRequest&, const ScheduledRequest&) = default;
};

struct CompositionResult {
  std::vector<ScheduledRequest> selected;
  double total_reliability = 0.0;    // sum of consumer scores, may exceed 1
  double total_actual_reward = 0.0;
  double remaining_energy_pct = 0.0;
  std::chrono::nanoseconds elapsed{0};
  Strategy strategy = Strategy::RB;
};

// ---------------------------------------------------------------------------
// Validation. Each function throws eaas::Error on the first violated invariant.

namespace detail {

inline bool is_fraction(double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; }
inline bool is_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }
inline bool is_finite(const Location& l) { return std::isfinite(l.x) && std::isfinite(l.y); }

}  // namespace detail

inline void validate(const EnergyService& s) {
  if (s.window_start >= s.window_end) {
    throw Error(ErrorCode::InvalidWindow, "service " + s.service_id + " has an empty window");
  }
  if (!detail::is_fraction(s.capacity_pct)) {
    throw Error(ErrorCode::InvalidAmount, "service " + s.service_id + " capacity outside (0,1]");
  }
  if (!detail::is_finite(s.location)) {
    throw Error(ErrorCode::InvalidConfig, "service " + s.service_id + " location not finite");
  }
}

inline void validate(const ReliabilityBreakdown& r) {
  for (double c : {r.history, r.voluntary, r.involuntary, r.random_behavior, r.total}) {
    if (!detail::is_unit(c)) throw Error(ErrorCode::InvalidAmount, "reliability component outside [0,1]");
  }
}

inline void validate(const EnergyRequest& r) {
  if (r.window_start >= r.window_end) {
    throw Error(ErrorCode::InvalidWindow, "request " + r.request_id + " has an empty window");
  }
  if (!detail::is_fraction(r.requested_pct)) {
    throw Error(ErrorCode::InvalidAmount, "request " + r.request_id + " amount outside (0,1]");
  }
  if (!detail::is_finite(r.location)) {
    throw Error(ErrorCode::InvalidConfig, "request " + r.request_id + " location not finite");
  }
  if (r.reliability) validate(*r.reliability);
  if (r.reliability && r.reward && r.actual_reward &&
      std::abs(*r.actual_reward - *r.reward * r.reliability->total) > 1e-9) {
    throw Error(ErrorCode::InvalidAmount,
                "request " + r.request_id + " actual_reward disagrees with reward x reliability");
  }
}

inline EnergyRequest validate_request(EnergyRequest req) {
  validate(req);
  return req;
}

inline void validate(const SessionRecord& s) {
  if (s.session_start > s.session_end) {
    throw Error(ErrorCode::InvalidSession, "session ends before it starts");
  }
  if (!detail::is_fraction(s.requested_energy)) {
    throw Error(ErrorCode::InvalidSession, "requested_energy outside (0,1]");
  }
  if (!std::isfinite(s.received_energy) || s.received_energy < 0.0 ||
      s.received_energy > s.requested_energy) {
    throw Error(ErrorCode::InvalidSession, "received_energy outside [0, requested_energy]");
  }
  if (s.required_time <= 0 || s.stay_time < 0) {
    throw Error(ErrorCode::InvalidSession, "required_time must be positive, stay_time non-negative");
  }
  if (s.success && s.received_energy != s.requested_energy) {
    throw Error(ErrorCode::InvalidSession, "success flag set on a partially served session");
  }
  Timestamp cursor = s.session_start;
  for (const Disconnection& d : s.disconnections) {
    if (d.start < cursor || d.end < d.start || d.end > s.session_end) {
      throw Error(ErrorCode::InvalidSession,
                  "disconnections must be ordered, disjoint and inside the session");
    }
    cursor = d.end;
  }
}

inline void validate(const ConsumerHistory& h) {
  for (const SessionRecord& s : h.sessions) validate(s);
}

inline void validate(const DisruptionConfig& c) {
  if (!(0 < c.delta_sec && c.delta_sec < c.epsilon_sec && 0 < c.alpha_sec)) {
    throw Error(ErrorCode::InvalidConfig, "disruption thresholds need 0 < delta < epsilon and alpha > 0");
  }
}

inline void validate(const Weights& w) {
  double sum = 0.0;
  for (double v : w.as_array()) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::BadWeights, "weights must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::BadWeights, "weights must sum to 1");
}

}  // namespace eaas

#endif  // EAAS_MODEL_HPP_
