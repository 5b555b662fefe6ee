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

// Independent re-verification of a composition. Feasibility and every
// aggregate are recomputed from the raw request fields; nothing here calls
// into the composers. Violations are returned as data.

#ifndef EAAS_CHECKER_HPP_
#define EAAS_CHECKER_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eaas/model.hpp"
#include "eaas/reliability.hpp"
#include "eaas/selection.hpp"

namespace eaas {

struct Violation {
  std::string kind;  // "overlap", "budget", "reward mismatch", ...
  std::string detail;
};

inline constexpr double kCheckTolerance = 1e-9;

namespace detail {

inline std::string describe_mismatch(const std::string& what, double expected, double reported) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": expected " << expected << ", reported " << reported;
  return os.str();
}

inline bool differs(double a, double b) { return !(std::abs(a - b) <= kCheckTolerance); }

}  // namespace detail

inline std::vector<Violation> verify_composition(const EnergyService& service, const CompositionResult& result,
                                                 const HistoryMap& histories, const SelectionConfig& cfg) {
  std::vector<Violation> out;
  auto report = [&out](std::string kind, std::string detail) { out.push_back({std::move(kind), std::move(detail)}); };

  std::set<std::string> seen;
  double energy = 0.0;
  double reliability_sum = 0.0;
  double reward_sum = 0.0;
  for (const ScheduledRequest& s : result.selected) {
    const EnergyRequest& req = s.request;
    const std::string& id = req.request_id;
    if (!seen.insert(id).second) report("duplicate", id + " selected twice");
    if (s.scheduled_start >= s.scheduled_end) report("empty interval", id);
    if (s.scheduled_start < service.window_start || s.scheduled_end > service.window_end) {
      report("outside provider window", id);
    }
    if (s.scheduled_start < req.window_start || s.scheduled_end > req.window_end) {
      report("outside request window", id);
    }
    if (std::hypot(req.location.x - service.location.x, req.location.y - service.location.y) > cfg.max_distance_m) {
      report("out of range", id);
    }
    if (!(req.requested_pct > 0.0)) report("empty request", id);
    energy += req.requested_pct;

    if (!req.reliability || !req.reward || !req.actual_reward) {
      report("missing annotation", id);
      continue;
    }
    double expected_total = 0.0;
    auto it = histories.find(req.consumer_id);
    if (it != histories.end() && !it->second.sessions.empty()) {
      expected_total = score_consumer(it->second, cfg.scoring).total;
    } else if (cfg.scoring.default_reliability) {
      expected_total = *cfg.scoring.default_reliability;
    } else {
      report("missing history", req.consumer_id);
      expected_total = req.reliability->total;
    }
    if (detail::differs(req.reliability->total, expected_total)) {
      report("request reliability mismatch", detail::describe_mismatch(id, expected_total, req.reliability->total));
    }
    const double reward = req.requested_pct / service.capacity_pct;
    if (detail::differs(*req.reward, reward)) {
      report("request reward mismatch", detail::describe_mismatch(id, reward, *req.reward));
    }
    const double actual = reward * expected_total;
    if (detail::differs(*req.actual_reward, actual)) {
      report("request actual reward mismatch", detail::describe_mismatch(id, actual, *req.actual_reward));
    }
    reliability_sum += expected_total;
    reward_sum += actual;
  }

  std::vector<const ScheduledRequest*> by_time;
  for (const ScheduledRequest& s : result.selected) by_time.push_back(&s);
  std::sort(by_time.begin(), by_time.end(), [](const ScheduledRequest* a, const ScheduledRequest* b) {
    return a->scheduled_start < b->scheduled_start;
  });
  for (std::size_t i = 1; i < by_time.size(); ++i) {
    if (by_time[i]->scheduled_start < by_time[i - 1]->scheduled_end) {
      report("overlap", by_time[i - 1]->request.request_id + " and " + by_time[i]->request.request_id);
    }
  }

  if (energy > service.capacity_pct + kCheckTolerance) {
    report("budget", detail::describe_mismatch("requested energy within capacity", service.capacity_pct, energy));
  }
  if (detail::differs(result.remaining_energy_pct, service.capacity_pct - energy)) {
    report("remaining energy mismatch",
           detail::describe_mismatch("remaining energy", service.capacity_pct - energy, result.remaining_energy_pct));
  }
  if (detail::differs(result.total_reliability, reliability_sum)) {
    report("reliability mismatch",
           detail::describe_mismatch("total reliability", reliability_sum, result.total_reliability));
  }
  if (detail::differs(result.total_actual_reward, reward_sum)) {
    report("reward mismatch", detail::describe_mismatch("total actual reward", reward_sum, result.total_actual_reward));
  }
  return out;
}

// Cross-checks the selected requests against the requests that were offered.
// A selected request may be a downsized copy of the original (same start,
// no later end, no more energy) but never a different request.
inline std::vector<Violation> verify_against_requests(const CompositionResult& result,
                                                      const std::vector<EnergyRequest>& offered) {
  std::map<std::string, const EnergyRequest*> by_id;
  for (const EnergyRequest& r : offered) by_id.emplace(r.request_id, &r);
  std::vector<Violation> out;
  for (const ScheduledRequest& s : result.selected) {
    const EnergyRequest& req = s.request;
    auto it = by_id.find(req.request_id);
    if (it == by_id.end()) {
      out.push_back({"unknown request", req.request_id});
      continue;
    }
    const EnergyRequest& orig = *it->second;
    if (req.consumer_id != orig.consumer_id || req.location != orig.location ||
        req.window_start != orig.window_start || req.window_end > orig.window_end ||
        req.requested_pct > orig.requested_pct) {
      out.push_back({"request mismatch", req.request_id + " does not match the offered request"});
    }
  }
  return out;
}

}  // namespace eaas

#endif  // EAAS_CHECKER_HPP_
