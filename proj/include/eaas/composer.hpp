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

// Phase 2 composers. Each takes the requests a provider could serve and
// returns a non-overlapping, budget-feasible schedule:
//
//   compose_rb          scan by start time, reward breaks ties
//   compose_arb         downsize by voluntary reliability, then as RB
//   compose_greedy      first come first served on start time
//   compose_bruteforce  exact optimum of total actual reward

#ifndef EAAS_COMPOSER_HPP_
#define EAAS_COMPOSER_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eaas/model.hpp"
#include "eaas/reliability.hpp"
#include "eaas/selection.hpp"

namespace eaas {

inline constexpr std::size_t kDefaultBruteForceLimit = 20;

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline double reliability_of(const EnergyRequest& r) { return r.reliability ? r.reliability->total : 0.0; }
inline double actual_reward_of(const EnergyRequest& r) { return r.actual_reward.value_or(0.0); }

// What the composers look at while ordering and admitting. Requests are only
// copied into the result once admitted.
struct Candidate {
  const EnergyRequest* source = nullptr;
  Timestamp start = 0;
  Timestamp end = 0;
  double requested = 0.0;
  double actual_reward = 0.0;
  double reliability = 0.0;
  double voluntary = 1.0;  // scale applied when materialising; 1 = unchanged
};

inline Candidate as_candidate(const EnergyRequest& r) {
  return {&r, r.window_start, r.window_end, r.requested_pct, actual_reward_of(r), reliability_of(r), 1.0};
}

inline std::vector<Candidate> as_candidates(const std::vector<EnergyRequest>& requests) {
  std::vector<Candidate> out;
  out.reserve(requests.size());
  for (const EnergyRequest& r : requests) out.push_back(as_candidate(r));
  return out;
}

inline bool by_start_then_reward(const Candidate& a, const Candidate& b) {
  if (a.start != b.start) return a.start < b.start;
  if (a.actual_reward != b.actual_reward) return a.actual_reward > b.actual_reward;
  return a.source->request_id < b.source->request_id;
}

inline bool by_start(const Candidate& a, const Candidate& b) {
  if (a.start != b.start) return a.start < b.start;
  return a.source->request_id < b.source->request_id;
}

}  // namespace detail

// Shrinks a request in proportion to its consumer's voluntary reliability:
// both the amount and the window length scale by `voluntary`. The window is
// rounded down to whole seconds and never shorter than one second.
inline Duration downsized_length(Duration length, double voluntary) {
  const auto scaled = static_cast<Duration>(std::floor(static_cast<double>(length) * voluntary));
  return std::max<Duration>(scaled, 1);
}

inline EnergyRequest downsize(EnergyRequest req, double voluntary) {
  req.requested_pct *= voluntary;
  req.window_end = req.window_start + downsized_length(req.window_length(), voluntary);
  return req;
}

namespace detail {

// The request as it enters the schedule. For a downsized candidate this
// re-derives the reward from the shrunken amount.
inline EnergyRequest materialise(const Candidate& c, const EnergyService& service) {
  if (c.voluntary == 1.0) return *c.source;
  return annotate(downsize(*c.source, c.voluntary), c.source->reliability.value(), service);
}

inline CompositionResult empty_result(const EnergyService& service, Strategy strategy) {
  CompositionResult result;
  result.strategy = strategy;
  result.remaining_energy_pct = service.capacity_pct;
  return result;
}

inline void admit(CompositionResult& result, const Candidate& c, const EnergyService& service) {
  result.total_reliability += c.reliability;
  result.total_actual_reward += c.actual_reward;
  result.remaining_energy_pct -= c.requested;
  result.selected.push_back({materialise(c, service), c.start, c.end});
}

// Single pass over an already ordered list. A request is admitted when it
// starts no earlier than the end of the previous admission and fits in the
// remaining capacity; otherwise it is skipped and the scan continues.
inline CompositionResult scan_admit(const EnergyService& service, const std::vector<Candidate>& ordered,
                                    Strategy strategy) {
  CompositionResult result = empty_result(service, strategy);
  Timestamp provider_start = service.window_start;
  for (const Candidate& c : ordered) {
    if (c.start < provider_start) continue;
    if (c.requested > result.remaining_energy_pct) continue;
    admit(result, c, service);
    provider_start = c.end;
  }
  return result;
}

// The adaptive step on already annotated requests: shrink
// by voluntary reliability and re-derive the reward of the smaller request.
// Consumers with zero voluntary reliability shrink to nothing and drop out.
inline std::vector<Candidate> adapted_candidates(const EnergyService& service,
                                                 const std::vector<EnergyRequest>& annotated) {
  std::vector<Candidate> out;
  out.reserve(annotated.size());
  for (const EnergyRequest& r : annotated) {
    const ReliabilityBreakdown& rel = r.reliability.value();
    const double v = rel.voluntary;
    if (!(v > 0.0)) continue;
    Candidate c = as_candidate(r);
    c.voluntary = v;
    c.requested = r.requested_pct * v;
    c.end = r.window_start + downsized_length(r.window_length(), v);
    c.actual_reward = actual_reward(c.requested / service.capacity_pct, rel.total);
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

inline CompositionResult compose_rb(const EnergyService& service, const std::vector<EnergyRequest>& selected) {
  detail::Stopwatch watch;
  std::vector<detail::Candidate> order = detail::as_candidates(selected);
  std::sort(order.begin(), order.end(), detail::by_start_then_reward);
  CompositionResult result = detail::scan_admit(service, order, Strategy::RB);
  result.elapsed = watch.elapsed();
  return result;
}

inline CompositionResult compose_greedy(const EnergyService& service, const std::vector<EnergyRequest>& selected) {
  detail::Stopwatch watch;
  std::vector<detail::Candidate> order = detail::as_candidates(selected);
  std::sort(order.begin(), order.end(), detail::by_start);
  CompositionResult result = detail::scan_admit(service, order, Strategy::Greedy);
  result.elapsed = watch.elapsed();
  return result;
}

// Downsized, re-annotated copies of requests that passed selection.
inline std::vector<EnergyRequest> adapt(const EnergyService& service, const std::vector<EnergyRequest>& annotated) {
  std::vector<EnergyRequest> out;
  for (const detail::Candidate& c : detail::adapted_candidates(service, annotated)) {
    out.push_back(detail::materialise(c, service));
  }
  return out;
}

// ARB's own selection phase, starting from raw requests.
template <typename Source>
std::vector<EnergyRequest> adaptive_select(const EnergyService& service, const std::vector<EnergyRequest>& raw,
                                           const Source& source, const SelectionConfig& cfg) {
  return adapt(service, select_requests(service, raw, source, cfg));
}

// ARB over requests already filtered and scored by select_requests. The
// benchmark times this, since filtering and scoring are shared with the other
// strategies.
inline CompositionResult compose_arb_prescored(const EnergyService& service,
                                               const std::vector<EnergyRequest>& annotated) {
  detail::Stopwatch watch;
  std::vector<detail::Candidate> order = detail::adapted_candidates(service, annotated);
  std::sort(order.begin(), order.end(), detail::by_start_then_reward);
  CompositionResult result = detail::scan_admit(service, order, Strategy::ARB);
  result.elapsed = watch.elapsed();
  return result;
}

template <typename Source>
CompositionResult compose_arb(const EnergyService& service, const std::vector<EnergyRequest>& raw,
                              const Source& source, const SelectionConfig& cfg) {
  detail::Stopwatch watch;
  CompositionResult result = compose_arb_prescored(service, select_requests(service, raw, source, cfg));
  result.elapsed = watch.elapsed();
  return result;
}

namespace detail {

// Depth-first subset enumeration over requests sorted by start time with
// branch-and-bound pruning. Including request i jumps straight to the first
// request starting at or after its end, so every explored subset is
// overlap-free by construction.
class BruteForceSearch {
 public:
  explicit BruteForceSearch(const EnergyService& service, const std::vector<EnergyRequest>& requests)
      : capacity_(service.capacity_pct), order_(as_candidates(requests)) {
    std::sort(order_.begin(), order_.end(), by_start);
    const std::size_t n = order_.size();
    next_.resize(n);
    suffix_reward_.assign(n + 1, 0.0);
    suffix_max_ratio_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const Timestamp end = order_[i].end;
      auto it = std::partition_point(order_.begin() + static_cast<std::ptrdiff_t>(i) + 1, order_.end(),
                                     [end](const Candidate& c) { return c.start < end; });
      next_[i] = static_cast<std::size_t>(it - order_.begin());
    }
    for (std::size_t i = n; i-- > 0;) {
      suffix_reward_[i] = suffix_reward_[i + 1] + order_[i].actual_reward;
      suffix_max_ratio_[i] = std::max(suffix_max_ratio_[i + 1], order_[i].actual_reward / order_[i].requested);
    }
  }

  std::vector<Candidate> run() {
    consider(0.0, 0.0);
    extend(0, capacity_, 0.0, 0.0);
    std::vector<Candidate> out;
    for (std::size_t i : best_) out.push_back(order_[i]);
    return out;
  }

 private:
  static constexpr double kTie = 1e-12;

  // Tries every request at index >= first as the next member of the subset.
  void extend(std::size_t first, double remaining, double reward, double reliability) {
    for (std::size_t i = first; i < order_.size(); ++i) {
      // Reward per unit of energy is bounded by the best ratio left, and the
      // total by the sum of every reward left. Both shrink as i grows.
      const double bound = reward + std::min(suffix_reward_[i], remaining * suffix_max_ratio_[i]);
      if (bound < best_reward_ - kTie) return;
      const Candidate& c = order_[i];
      if (c.requested > remaining) continue;
      const double next_reward = reward + c.actual_reward;
      const double next_reliability = reliability + c.reliability;
      chosen_.push_back(i);
      consider(next_reward, next_reliability);
      extend(next_[i], remaining - c.requested, next_reward, next_reliability);
      chosen_.pop_back();
    }
  }

  void consider(double reward, double reliability) {
    if (!have_best_ || reward > best_reward_ + kTie) {
      take(reward, reliability);
      return;
    }
    if (reward < best_reward_ - kTie) return;
    if (reliability > best_reliability_ + kTie) {
      take(reward, reliability);
      return;
    }
    if (reliability < best_reliability_ - kTie) return;
    if (sorted_ids(chosen_) < sorted_ids(best_)) take(reward, reliability);
  }

  void take(double reward, double reliability) {
    have_best_ = true;
    best_reward_ = reward;
    best_reliability_ = reliability;
    best_ = chosen_;
  }

  std::vector<std::string_view> sorted_ids(const std::vector<std::size_t>& idx) const {
    std::vector<std::string_view> ids;
    ids.reserve(idx.size());
    for (std::size_t i : idx) ids.push_back(order_[i].source->request_id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  double capacity_;
  std::vector<Candidate> order_;
  std::vector<std::size_t> next_;
  std::vector<double> suffix_reward_;
  std::vector<double> suffix_max_ratio_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  double best_reward_ = 0.0;
  double best_reliability_ = 0.0;
  bool have_best_ = false;
};

}  // namespace detail

inline CompositionResult compose_bruteforce(const EnergyService& service, const std::vector<EnergyRequest>& selected,
                                            std::size_t limit_n = kDefaultBruteForceLimit) {
  if (selected.size() > limit_n) {
    throw Error(ErrorCode::TooManyCandidates, std::to_string(selected.size()) + " candidates exceed the limit of " +
                                                  std::to_string(limit_n));
  }
  detail::Stopwatch watch;
  CompositionResult result = detail::empty_result(service, Strategy::BruteForce);
  for (const detail::Candidate& c : detail::BruteForceSearch(service, selected).run()) {
    detail::admit(result, c, service);
  }
  result.elapsed = watch.elapsed();
  return result;
}

struct ComposeOptions {
  std::size_t bf_limit = kDefaultBruteForceLimit;
  // Run brute force over ARB's downsized requests instead of the originals.
  bool bf_adaptive = false;
};

// Selection plus the chosen strategy, starting from raw requests.
template <typename Source>
CompositionResult compose(Strategy strategy, const EnergyService& service, const std::vector<EnergyRequest>& raw,
                          const Source& source, const SelectionConfig& cfg, const ComposeOptions& opts = {}) {
  validate(service);
  switch (strategy) {
    case Strategy::RB: return compose_rb(service, select_requests(service, raw, source, cfg));
    case Strategy::Greedy: return compose_greedy(service, select_requests(service, raw, source, cfg));
    case Strategy::ARB: return compose_arb(service, raw, source, cfg);
    case Strategy::BruteForce:
      return compose_bruteforce(service,
                                opts.bf_adaptive ? adaptive_select(service, raw, source, cfg)
                                                 : select_requests(service, raw, source, cfg),
                                opts.bf_limit);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown strategy");
}

}  // namespace eaas

#endif  // EAAS_COMPOSER_HPP_
