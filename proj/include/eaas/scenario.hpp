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

// JSON representation of every domain type and of a scenario file:
//
//   { "service": EnergyService, "requests": [EnergyRequest...],
//     "histories": [ConsumerHistory...], "disruption_config": DisruptionConfig,
//     "weights": [w_history, w_voluntary, w_involuntary, w_random],
//     "metadata": {...} }
//
// Field names match the C++ member names. "metadata" is optional.

#ifndef EAAS_SCENARIO_HPP_
#define EAAS_SCENARIO_HPP_

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eaas/model.hpp"
#include "eaas/reliability.hpp"

namespace eaas {

using json = nlohmann::json;

struct Scenario {
  EnergyService service;
  std::vector<EnergyRequest> requests;
  std::vector<ConsumerHistory> histories;
  DisruptionConfig disruption_config;
  Weights weights;
  json metadata = json::object();
};

inline void to_json(json& j, const Location& l) { j = json{{"x", l.x}, {"y", l.y}}; }
inline void from_json(const json& j, Location& l) {
  j.at("x").get_to(l.x);
  j.at("y").get_to(l.y);
}

inline void to_json(json& j, const EnergyService& s) {
  j = json{{"service_id", s.service_id},     {"provider_id", s.provider_id},
           {"capacity_pct", s.capacity_pct}, {"location", s.location},
           {"window_start", s.window_start}, {"window_end", s.window_end}};
}
inline void from_json(const json& j, EnergyService& s) {
  j.at("service_id").get_to(s.service_id);
  j.at("provider_id").get_to(s.provider_id);
  j.at("capacity_pct").get_to(s.capacity_pct);
  j.at("location").get_to(s.location);
  j.at("window_start").get_to(s.window_start);
  j.at("window_end").get_to(s.window_end);
}

inline void to_json(json& j, const Weights& w) { j = w.as_array(); }
inline void from_json(const json& j, Weights& w) { w = Weights::from_array(j.get<std::array<double, 4>>()); }

inline void to_json(json& j, const ReliabilityBreakdown& r) {
  j = json{{"history", r.history},
           {"voluntary", r.voluntary},
           {"involuntary", r.involuntary},
           {"random_behavior", r.random_behavior},
           {"total", r.total},
           {"weights", r.weights}};
}
inline void from_json(const json& j, ReliabilityBreakdown& r) {
  j.at("history").get_to(r.history);
  j.at("voluntary").get_to(r.voluntary);
  j.at("involuntary").get_to(r.involuntary);
  j.at("random_behavior").get_to(r.random_behavior);
  j.at("total").get_to(r.total);
  j.at("weights").get_to(r.weights);
}

namespace detail {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    v.reset();
  } else {
    v = it->template get<T>();
  }
}

}  // namespace detail

inline void to_json(json& j, const EnergyRequest& r) {
  j = json{{"request_id", r.request_id},     {"consumer_id", r.consumer_id},
           {"requested_pct", r.requested_pct}, {"location", r.location},
           {"window_start", r.window_start}, {"window_end", r.window_end}};
  detail::put_optional(j, "reliability", r.reliability);
  detail::put_optional(j, "reward", r.reward);
  detail::put_optional(j, "actual_reward", r.actual_reward);
}
inline void from_json(const json& j, EnergyRequest& r) {
  j.at("request_id").get_to(r.request_id);
  j.at("consumer_id").get_to(r.consumer_id);
  j.at("requested_pct").get_to(r.requested_pct);
  j.at("location").get_to(r.location);
  j.at("window_start").get_to(r.window_start);
  j.at("window_end").get_to(r.window_end);
  detail::get_optional(j, "reliability", r.reliability);
  detail::get_optional(j, "reward", r.reward);
  detail::get_optional(j, "actual_reward", r.actual_reward);
}

inline void to_json(json& j, const Disconnection& d) { j = json::array({d.start, d.end}); }
inline void from_json(const json& j, Disconnection& d) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::MalformedScenario, "disconnection must be [start, end]");
  j.at(0).get_to(d.start);
  j.at(1).get_to(d.end);
}

inline void to_json(json& j, const SessionRecord& s) {
  j = json{{"requested_energy", s.requested_energy}, {"received_energy", s.received_energy},
           {"required_time", s.required_time},       {"stay_time", s.stay_time},
           {"session_start", s.session_start},       {"session_end", s.session_end},
           {"disconnections", s.disconnections},     {"success", s.success}};
}
inline void from_json(const json& j, SessionRecord& s) {
  j.at("requested_energy").get_to(s.requested_energy);
  j.at("received_energy").get_to(s.received_energy);
  j.at("required_time").get_to(s.required_time);
  j.at("stay_time").get_to(s.stay_time);
  j.at("session_start").get_to(s.session_start);
  j.at("session_end").get_to(s.session_end);
  j.at("disconnections").get_to(s.disconnections);
  j.at("success").get_to(s.success);
}

inline void to_json(json& j, const ConsumerHistory& h) {
  j = json{{"consumer_id", h.consumer_id}, {"sessions", h.sessions}};
}
inline void from_json(const json& j, ConsumerHistory& h) {
  j.at("consumer_id").get_to(h.consumer_id);
  j.at("sessions").get_to(h.sessions);
}

inline void to_json(json& j, const DisruptionConfig& c) {
  j = json{{"delta_sec", c.delta_sec}, {"epsilon_sec", c.epsilon_sec}, {"alpha_sec", c.alpha_sec}};
}
inline void from_json(const json& j, DisruptionConfig& c) {
  j.at("delta_sec").get_to(c.delta_sec);
  j.at("epsilon_sec").get_to(c.epsilon_sec);
  j.at("alpha_sec").get_to(c.alpha_sec);
}

inline void to_json(json& j, const Scenario& s) {
  j = json{{"service", s.service},
           {"requests", s.requests},
           {"histories", s.histories},
           {"disruption_config", s.disruption_config},
           {"weights", s.weights}};
  if (!s.metadata.empty()) j["metadata"] = s.metadata;
}
inline void from_json(const json& j, Scenario& s) {
  j.at("service").get_to(s.service);
  j.at("requests").get_to(s.requests);
  j.at("histories").get_to(s.histories);
  s.disruption_config = j.contains("disruption_config") ? j.at("disruption_config").get<DisruptionConfig>()
                                                        : DisruptionConfig{};
  s.weights = j.contains("weights") ? j.at("weights").get<Weights>() : Weights{};
  s.metadata = j.value("metadata", json::object());
}

inline void validate(const Scenario& s) {
  validate(s.service);
  for (const EnergyRequest& r : s.requests) validate(r);
  for (const ConsumerHistory& h : s.histories) validate(h);
  validate(s.disruption_config);
  validate(s.weights);
}

inline void to_json(json& j, const CompositionResult& r) {
  json selected = json::array();
  for (const ScheduledRequest& s : r.selected) {
    selected.push_back(json{{"request_id", s.request.request_id},
                            {"scheduled_start", s.scheduled_start},
                            {"scheduled_end", s.scheduled_end},
                            {"request", s.request}});
  }
  j = json{{"strategy", std::string(to_string(r.strategy))},
           {"selected", std::move(selected)},
           {"total_reliability", r.total_reliability},
           {"total_actual_reward", r.total_actual_reward},
           {"remaining_energy_pct", r.remaining_energy_pct},
           {"elapsed_micros", static_cast<double>(r.elapsed.count()) / 1000.0}};
}
inline void from_json(const json& j, CompositionResult& r) {
  r.strategy = parse_strategy(j.at("strategy").get<std::string>());
  r.selected.clear();
  for (const json& s : j.at("selected")) {
    ScheduledRequest sr;
    s.at("request").get_to(sr.request);
    s.at("scheduled_start").get_to(sr.scheduled_start);
    s.at("scheduled_end").get_to(sr.scheduled_end);
    if (s.at("request_id").get<std::string>() != sr.request.request_id) {
      throw Error(ErrorCode::MalformedScenario, "selected entry request_id disagrees with its request");
    }
    r.selected.push_back(std::move(sr));
  }
  j.at("total_reliability").get_to(r.total_reliability);
  j.at("total_actual_reward").get_to(r.total_actual_reward);
  j.at("remaining_energy_pct").get_to(r.remaining_energy_pct);
  r.elapsed = std::chrono::nanoseconds(static_cast<std::int64_t>(j.value("elapsed_micros", 0.0) * 1000.0));
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedScenario, path.string() + ": " + e.what());
  }
}

inline Scenario scenario_from_json(const json& j) {
  Scenario s;
  try {
    s = j.get<Scenario>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedScenario, e.what());
  }
  validate(s);
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) { return scenario_from_json(read_json_file(path)); }

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

inline void save_scenario(const std::filesystem::path& path, const Scenario& s) {
  write_text_file(path, json(s).dump(2) + "\n");
}

}  // namespace eaas

#endif  // EAAS_SCENARIO_HPP_
