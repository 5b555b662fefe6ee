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

// Synthetic scenario generation and transaction CSV ingestion.
//
// All randomness flows from one std::mt19937_64 per scenario and the draws
// below are defined bit-for-bit, so a seed reproduces a scenario exactly on
// any conforming standard library.

#ifndef EAAS_WORKLOAD_HPP_
#define EAAS_WORKLOAD_HPP_

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eaas/model.hpp"
#include "eaas/scenario.hpp"

namespace eaas {

// ---------------------------------------------------------------------------
// Random draws

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for a (seed, a, b) triple.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const auto scaled = static_cast<unsigned __int128>(engine_()) * span;
    return lo + static_cast<std::int64_t>(scaled >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Knuth's multiplication method; means here stay well below the point
  // where exp(-mean) underflows.
  std::int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double product = uniform01();
    while (product > limit) {
      ++k;
      product *= uniform01();
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Configuration

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return (lo + hi) / 2.0; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct GeneratorConfig {
  std::uint64_t seed = 42;
  std::int64_t n_services = 8000;
  double requests_per_microcell_day = 560.0;
  // Opening hours over which the daily request volume is spread.
  double microcell_open_hours = 12.0;
  IntRange service_duration_min{30, 120};
  IntRange request_duration_min{5, 30};
  Range provided_energy_pct{0.50, 1.00};
  Range requested_energy_pct{0.01, 1.00};
  Range battery_level_pct{0.01, 0.60};
  IntRange history_sessions_per_consumer{5, 20};
  double disruption_rate = 0.4;
  double microcell_radius_m = 10.0;
  // 2019-04-01 07:00:00 UTC, opening time of the simulated day.
  Timestamp day_start = 1554102000;
  DisruptionConfig disruption;
  Weights weights;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

inline void validate(const GeneratorConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  auto check_fraction_range = [&](const Range& r, const char* name) {
    if (!(r.lo > 0.0 && r.lo <= r.hi && r.hi <= 1.0)) fail(std::string(name) + " must satisfy 0 < lo <= hi <= 1");
  };
  if (c.n_services < 1) fail("n_services must be positive");
  if (!(c.requests_per_microcell_day >= 0.0) || !std::isfinite(c.requests_per_microcell_day)) {
    fail("requests_per_microcell_day must be non-negative");
  }
  if (!(c.microcell_open_hours > 0.0 && c.microcell_open_hours <= 24.0)) fail("microcell_open_hours must be in (0,24]");
  if (!(0 < c.service_duration_min.lo && c.service_duration_min.lo <= c.service_duration_min.hi)) {
    fail("service_duration_min range is empty");
  }
  if (!(0 < c.request_duration_min.lo && c.request_duration_min.lo <= c.request_duration_min.hi)) {
    fail("request_duration_min range is empty");
  }
  if (c.request_duration_min.lo > c.service_duration_min.lo) {
    fail("shortest request must fit in the shortest service");
  }
  if (c.service_duration_min.hi > static_cast<std::int64_t>(c.microcell_open_hours * 60.0)) {
    fail("service_duration_min exceeds opening hours");
  }
  check_fraction_range(c.provided_energy_pct, "provided_energy_pct");
  check_fraction_range(c.requested_energy_pct, "requested_energy_pct");
  check_fraction_range(c.battery_level_pct, "battery_level_pct");
  if (!(0 < c.history_sessions_per_consumer.lo &&
        c.history_sessions_per_consumer.lo <= c.history_sessions_per_consumer.hi)) {
    fail("history_sessions_per_consumer range is empty");
  }
  if (!(c.disruption_rate >= 0.0 && c.disruption_rate <= 1.0)) fail("disruption_rate outside [0,1]");
  if (!(c.microcell_radius_m > 0.0) || !std::isfinite(c.microcell_radius_m)) fail("microcell_radius_m must be positive");
  validate(c.disruption);
  validate(c.weights);
}

inline void to_json(json& j, const Range& r) { j = json::array({r.lo, r.hi}); }
inline void from_json(const json& j, Range& r) {
  j.at(0).get_to(r.lo);
  j.at(1).get_to(r.hi);
}
inline void to_json(json& j, const IntRange& r) { j = json::array({r.lo, r.hi}); }
inline void from_json(const json& j, IntRange& r) {
  j.at(0).get_to(r.lo);
  j.at(1).get_to(r.hi);
}

inline void to_json(json& j, const GeneratorConfig& c) {
  j = json{{"seed", c.seed},
           {"n_services", c.n_services},
           {"requests_per_microcell_day", c.requests_per_microcell_day},
           {"microcell_open_hours", c.microcell_open_hours},
           {"service_duration_min", c.service_duration_min},
           {"request_duration_min", c.request_duration_min},
           {"provided_energy_pct", c.provided_energy_pct},
           {"requested_energy_pct", c.requested_energy_pct},
           {"battery_level_pct", c.battery_level_pct},
           {"history_sessions_per_consumer", c.history_sessions_per_consumer},
           {"disruption_rate", c.disruption_rate},
           {"microcell_radius_m", c.microcell_radius_m},
           {"day_start", c.day_start},
           {"disruption_config", c.disruption},
           {"weights", c.weights}};
}

// Every key is optional; missing keys keep their current value.
inline void from_json(const json& j, GeneratorConfig& c) {
  auto take = [&j](const char* key, auto& field) {
    if (auto it = j.find(key); it != j.end()) it->get_to(field);
  };
  take("seed", c.seed);
  take("n_services", c.n_services);
  take("requests_per_microcell_day", c.requests_per_microcell_day);
  take("microcell_open_hours", c.microcell_open_hours);
  take("service_duration_min", c.service_duration_min);
  take("request_duration_min", c.request_duration_min);
  take("provided_energy_pct", c.provided_energy_pct);
  take("requested_energy_pct", c.requested_energy_pct);
  take("battery_level_pct", c.battery_level_pct);
  take("history_sessions_per_consumer", c.history_sessions_per_consumer);
  take("disruption_rate", c.disruption_rate);
  take("microcell_radius_m", c.microcell_radius_m);
  take("day_start", c.day_start);
  take("disruption_config", c.disruption);
  take("weights", c.weights);
}

// ---------------------------------------------------------------------------
// Histories

namespace detail {

inline constexpr Duration kDay = 86400;

inline std::string padded_id(char prefix, std::int64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%05lld", prefix, static_cast<long long>(n));
  return buf;
}

inline Location uniform_in_disc(Rng& rng, const Location& centre, double radius) {
  const double r = radius * std::sqrt(rng.uniform01());
  const double theta = 2.0 * std::numbers::pi * rng.uniform01();
  return {centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
}

// One past session. Interior disconnections are made up by staying longer,
// so they cost time but not energy; a terminal disconnection cuts the
// transfer short. Received energy and stay time follow from the gaps.
inline SessionRecord generate_session(Rng& rng, const GeneratorConfig& cfg, Timestamp start,
                                      double disruption_probability) {
  const DisruptionConfig& dc = cfg.disruption;
  SessionRecord s;
  s.requested_energy = rng.uniform(cfg.requested_energy_pct.lo, cfg.requested_energy_pct.hi);
  s.required_time = 60 * rng.uniform_int(cfg.request_duration_min.lo, cfg.request_duration_min.hi);
  s.session_start = start;

  Duration terminal = 0;
  std::vector<Duration> interior;
  if (rng.bernoulli(disruption_probability)) {
    const double kind = rng.uniform01();
    if (kind < 0.5 && s.required_time - 1 >= dc.epsilon_sec) {
      terminal = rng.uniform_int(dc.epsilon_sec, s.required_time - 1);  // walked away
    } else if (kind < 0.8) {
      terminal = rng.uniform_int(dc.delta_sec, std::max(dc.delta_sec, dc.alpha_sec - 1));
    }
    auto count = rng.uniform_int(0, 3);
    if (terminal == 0 && count == 0) count = 1;
    for (std::int64_t k = 0; k < count; ++k) {
      const double u = rng.uniform01();
      if (u < 0.3) {
        interior.push_back(rng.uniform_int(1, dc.delta_sec - 1));
      } else if (u < 0.9) {
        interior.push_back(rng.uniform_int(dc.delta_sec, dc.epsilon_sec - 1));
      } else {
        interior.push_back(rng.uniform_int(dc.epsilon_sec, 2 * dc.epsilon_sec));
      }
    }
  }

  const Duration connected = s.required_time - terminal;
  // Gaps sit at distinct offsets strictly inside the connected time.
  std::set<Duration> offsets;
  if (connected >= static_cast<Duration>(interior.size()) + 1) {
    while (offsets.size() < interior.size()) offsets.insert(rng.uniform_int(1, connected - 1));
  } else {
    interior.clear();
  }

  Timestamp t = start;
  Duration previous = 0;
  std::size_t g = 0;
  for (Duration offset : offsets) {
    t += offset - previous;
    s.disconnections.push_back({t, t + interior[g]});
    t += interior[g++];
    previous = offset;
  }
  t += connected - previous;
  if (terminal > 0) {
    s.disconnections.push_back({t, t + terminal});
    t += terminal;
  }
  s.session_end = t;
  s.stay_time = connected;
  s.success = terminal == 0;
  s.received_energy = s.success ? s.requested_energy
                                : s.requested_energy * static_cast<double>(connected) /
                                      static_cast<double>(s.required_time);
  return s;
}

}  // namespace detail

// A consumer's past sessions, one per earlier day. Each consumer has its own
// propensity to be disrupted, drawn so the population mean is the configured
// disruption rate.
inline ConsumerHistory generate_history(Rng& rng, const std::string& consumer_id, const GeneratorConfig& cfg,
                                        Timestamp before) {
  ConsumerHistory h;
  h.consumer_id = consumer_id;
  const double rate = cfg.disruption_rate;
  const double p = rng.uniform(std::max(0.0, 2.0 * rate - 1.0), std::min(1.0, 2.0 * rate));
  const auto n = rng.uniform_int(cfg.history_sessions_per_consumer.lo, cfg.history_sessions_per_consumer.hi);
  const auto open_sec = static_cast<Duration>(cfg.microcell_open_hours * 3600.0);
  for (std::int64_t i = 0; i < n; ++i) {
    const Timestamp day = before - (n - i) * detail::kDay;
    h.sessions.push_back(detail::generate_session(rng, cfg, day + rng.uniform_int(0, open_sec - 1), p));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Scenarios

namespace detail {

inline json generation_metadata(const GeneratorConfig& cfg, std::uint64_t index) {
  return json{{"generator", cfg},
              {"service_index", index},
              {"history_model", "session ratios derived from injected disconnections"},
              {"battery_level_pct", json::object()}};
}

inline EnergyRequest make_request(Rng& rng, const GeneratorConfig& cfg, std::int64_t n, const Location& centre,
                                  Timestamp start) {
  EnergyRequest r;
  r.request_id = padded_id('R', n);
  r.consumer_id = padded_id('C', n);
  r.requested_pct = rng.uniform(cfg.requested_energy_pct.lo, cfg.requested_energy_pct.hi);
  r.location = uniform_in_disc(rng, centre, cfg.microcell_radius_m);
  r.window_start = start;
  return r;
}

}  // namespace detail

// Expected number of requests during a service window of the given length.
inline double expected_requests(const GeneratorConfig& cfg, std::int64_t service_minutes) {
  return cfg.requests_per_microcell_day * static_cast<double>(service_minutes) / (cfg.microcell_open_hours * 60.0);
}

// Scenario for service number `index` of the configured batch. When
// `fixed_duration_min` is positive the service window has exactly that length.
inline Scenario generate_scenario(const GeneratorConfig& cfg, std::uint64_t index = 0,
                                  std::int64_t fixed_duration_min = 0) {
  validate(cfg);
  Rng rng(derive_seed(cfg.seed, index));
  Scenario sc;
  sc.disruption_config = cfg.disruption;
  sc.weights = cfg.weights;
  sc.metadata = detail::generation_metadata(cfg, index);

  const std::int64_t duration_min = fixed_duration_min > 0
                                        ? fixed_duration_min
                                        : rng.uniform_int(cfg.service_duration_min.lo, cfg.service_duration_min.hi);
  if (duration_min < cfg.request_duration_min.lo) {
    throw Error(ErrorCode::InvalidConfig, "service shorter than the shortest request");
  }
  const auto open_min = static_cast<std::int64_t>(cfg.microcell_open_hours * 60.0);
  const std::int64_t offset_min = rng.uniform_int(0, std::max<std::int64_t>(0, open_min - duration_min));

  EnergyService& service = sc.service;
  service.service_id = detail::padded_id('S', static_cast<std::int64_t>(index));
  service.provider_id = detail::padded_id('P', static_cast<std::int64_t>(index));
  service.capacity_pct = rng.uniform(cfg.provided_energy_pct.lo, cfg.provided_energy_pct.hi);
  service.location = {0.0, 0.0};
  service.window_start = cfg.day_start + 60 * offset_min;
  service.window_end = service.window_start + 60 * duration_min;

  const std::int64_t count = rng.poisson(expected_requests(cfg, duration_min));
  json& battery = sc.metadata["battery_level_pct"];
  for (std::int64_t n = 1; n <= count; ++n) {
    const std::int64_t length_min =
        rng.uniform_int(cfg.request_duration_min.lo, std::min(cfg.request_duration_min.hi, duration_min));
    const std::int64_t start_min = rng.uniform_int(0, duration_min - length_min);
    EnergyRequest r =
        detail::make_request(rng, cfg, n, service.location, service.window_start + 60 * start_min);
    r.window_end = r.window_start + 60 * length_min;
    battery[r.consumer_id] = rng.uniform(cfg.battery_level_pct.lo, cfg.battery_level_pct.hi);
    sc.histories.push_back(generate_history(rng, r.consumer_id, cfg, service.window_start));
    sc.requests.push_back(std::move(r));
  }
  return sc;
}

// ---------------------------------------------------------------------------
// Transaction CSV ingestion
//
// Columns: consumer_id,date,time,location_x,location_y,shop_id with date as
// YYYY-MM-DD and time as HH:MM[:SS] (UTC). A header row is optional.

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    std::string_view field = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
      field.remove_suffix(1);
    }
    out.push_back(field);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_timestamp(std::string_view date, std::string_view time, Timestamp& out) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
  if (!parse_number(date.substr(0, 4), y) || !parse_number(date.substr(5, 2), mo) ||
      !parse_number(date.substr(8, 2), d)) {
    return false;
  }
  if (time.size() != 5 && time.size() != 8) return false;
  if (time[2] != ':' || !parse_number(time.substr(0, 2), h) || !parse_number(time.substr(3, 2), mi)) return false;
  if (time.size() == 8 && (time[5] != ':' || !parse_number(time.substr(6, 2), sec))) return false;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59 || h < 0 || mi < 0 || sec < 0) return false;
  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  out = static_cast<Timestamp>(days) * kDay + h * 3600 + mi * 60 + sec;
  return true;
}

[[noreturn]] inline void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::MalformedCSV, "line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

struct Transaction {
  std::string consumer_id;
  Timestamp time = 0;
  Location location;
  std::string shop_id;
  std::size_t line = 0;
};

inline std::vector<Transaction> parse_transactions(std::istream& in) {
  std::vector<Transaction> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto fields = detail::split_csv(line);
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (number == 1 && fields[0] == "consumer_id") continue;
    if (fields.size() != 6) detail::malformed(number, "expected 6 columns, found " + std::to_string(fields.size()));
    Transaction t;
    t.line = number;
    t.consumer_id = std::string(fields[0]);
    if (t.consumer_id.empty()) detail::malformed(number, "empty consumer_id");
    if (!detail::parse_timestamp(fields[1], fields[2], t.time)) detail::malformed(number, "bad date or time");
    if (!detail::parse_number(fields[3], t.location.x) || !detail::parse_number(fields[4], t.location.y) ||
        !std::isfinite(t.location.x) || !std::isfinite(t.location.y)) {
      detail::malformed(number, "non-numeric location");
    }
    t.shop_id = std::string(fields[5]);
    out.push_back(std::move(t));
  }
  return out;
}

// Transactions become requests: the transaction time is the request start and
// the transaction location its location. Everything else is drawn as in
// generate_scenario. The service opens at the first transaction, sits at the
// centroid of the transactions and lasts a drawn duration.
inline Scenario ingest_transactions(std::istream& in, const GeneratorConfig& cfg) {
  validate(cfg);
  const std::vector<Transaction> rows = parse_transactions(in);
  Rng rng(derive_seed(cfg.seed, 0x1e57ULL));
  Scenario sc;
  sc.disruption_config = cfg.disruption;
  sc.weights = cfg.weights;
  sc.metadata = detail::generation_metadata(cfg, 0);
  sc.metadata["source"] = "transactions";

  Timestamp first = cfg.day_start;
  Location centroid;
  if (!rows.empty()) {
    first = std::min_element(rows.begin(), rows.end(), [](const Transaction& a, const Transaction& b) {
              return a.time < b.time;
            })->time;
    for (const Transaction& t : rows) {
      centroid.x += t.location.x / static_cast<double>(rows.size());
      centroid.y += t.location.y / static_cast<double>(rows.size());
    }
  }
  const std::int64_t duration_min = rng.uniform_int(cfg.service_duration_min.lo, cfg.service_duration_min.hi);
  sc.service.service_id = "S00000";
  sc.service.provider_id = "P00000";
  sc.service.capacity_pct = rng.uniform(cfg.provided_energy_pct.lo, cfg.provided_energy_pct.hi);
  sc.service.location = centroid;
  sc.service.window_start = first;
  sc.service.window_end = first + 60 * duration_min;

  std::set<std::string> consumers;
  json& battery = sc.metadata["battery_level_pct"];
  for (const Transaction& t : rows) {
    EnergyRequest r;
    r.request_id = detail::padded_id('T', static_cast<std::int64_t>(t.line));
    r.consumer_id = t.consumer_id;
    r.requested_pct = rng.uniform(cfg.requested_energy_pct.lo, cfg.requested_energy_pct.hi);
    r.location = t.location;
    r.window_start = t.time;
    r.window_end = t.time + 60 * rng.uniform_int(cfg.request_duration_min.lo, cfg.request_duration_min.hi);
    if (consumers.insert(t.consumer_id).second) {
      battery[t.consumer_id] = rng.uniform(cfg.battery_level_pct.lo, cfg.battery_level_pct.hi);
      sc.histories.push_back(generate_history(rng, t.consumer_id, cfg, first));
    }
    sc.requests.push_back(std::move(r));
  }
  return sc;
}

inline Scenario ingest_transactions(const std::filesystem::path& csv_path, const GeneratorConfig& cfg) {
  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + csv_path.string());
  return ingest_transactions(in, cfg);
}

}  // namespace eaas

#endif  // EAAS_WORKLOAD_HPP_
