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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eaas/eaas.hpp"

namespace eaas {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(GenerateScenario, SameSeedGivesIdenticalFiles) {
  const fs::path dir = fs::temp_directory_path() / "eaas_workload_test";
  fs::create_directories(dir);
  GeneratorConfig cfg;
  save_scenario(dir / "a.json", generate_scenario(cfg, 7));
  save_scenario(dir / "b.json", generate_scenario(cfg, 7));
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  cfg.seed = 43;
  save_scenario(dir / "c.json", generate_scenario(cfg, 7));
  EXPECT_NE(slurp(dir / "a.json"), slurp(dir / "c.json"));
  fs::remove_all(dir);
}

TEST(GenerateScenario, RespectsConfiguredRanges) {
  const GeneratorConfig cfg;
  for (std::uint64_t index = 0; index < 200; ++index) {
    const Scenario sc = generate_scenario(cfg, index);
    EXPECT_NO_THROW(validate(sc));
    EXPECT_GE(sc.service.capacity_pct, 0.5);
    EXPECT_LE(sc.service.capacity_pct, 1.0);
    const Duration service_len = sc.service.window_end - sc.service.window_start;
    EXPECT_GE(service_len, 30 * 60);
    EXPECT_LE(service_len, 120 * 60);
    ASSERT_EQ(sc.histories.size(), sc.requests.size());
    for (const EnergyRequest& r : sc.requests) {
      EXPECT_GE(r.window_length(), 300);
      EXPECT_LE(r.window_length(), 1800);
      EXPECT_TRUE(within_window(sc.service, r));
      EXPECT_LE(euclidean_distance(r.location, sc.service.location), cfg.microcell_radius_m);
      const double battery = sc.metadata["battery_level_pct"][r.consumer_id].get<double>();
      EXPECT_GE(battery, 0.01);
      EXPECT_LE(battery, 0.6);
    }
  }
}

TEST(GenerateScenario, FixedDurationIsHonoured) {
  for (std::int64_t minutes : {30, 60, 90, 120}) {
    const Scenario sc = generate_scenario(GeneratorConfig{}, 3, minutes);
    EXPECT_EQ(sc.service.window_end - sc.service.window_start, 60 * minutes);
  }
}

TEST(GenerateScenario, RejectsInvalidConfig) {
  GeneratorConfig cfg;
  cfg.provided_energy_pct = {0.9, 0.5};
  EXPECT_THROW(generate_scenario(cfg), Error);
  cfg = GeneratorConfig{};
  cfg.disruption_rate = 1.5;
  EXPECT_THROW(generate_scenario(cfg), Error);
}

TEST(GeneratorConfigJson, RoundTripsAndAcceptsPartialObjects) {
  GeneratorConfig cfg;
  cfg.seed = 9;
  cfg.requested_energy_pct = {0.01, 0.1};
  const json j = cfg;
  EXPECT_EQ(j.get<GeneratorConfig>(), cfg);
  const GeneratorConfig partial = json::parse(R"({"disruption_rate": 0.8})").get<GeneratorConfig>();
  EXPECT_EQ(partial.disruption_rate, 0.8);
  EXPECT_EQ(partial.seed, GeneratorConfig{}.seed);
}

TEST(GeneratorProperties, MeansMatchRangeMidpoints) {
  GeneratorConfig cfg;
  double requested = 0.0;
  double duration = 0.0;
  std::size_t n_requests = 0;
  for (std::uint64_t index = 0; n_requests < 10000; ++index) {
    for (const EnergyRequest& r : generate_scenario(cfg, index).requests) {
      requested += r.requested_pct;
      duration += static_cast<double>(r.window_length());
      ++n_requests;
    }
  }
  EXPECT_NEAR(requested / n_requests, 0.505, 0.02 * 0.505);
  EXPECT_NEAR(duration / n_requests, 17.5 * 60, 0.02 * 17.5 * 60);

  // Services alone: keep the request volume negligible.
  cfg.requests_per_microcell_day = 0.01;
  double capacity = 0.0;
  double service_len = 0.0;
  const int n_services = 10000;
  for (int index = 0; index < n_services; ++index) {
    const Scenario sc = generate_scenario(cfg, static_cast<std::uint64_t>(index));
    capacity += sc.service.capacity_pct;
    service_len += static_cast<double>(sc.service.window_end - sc.service.window_start);
  }
  EXPECT_NEAR(capacity / n_services, 0.75, 0.02 * 0.75);
  EXPECT_NEAR(service_len / n_services, 75.0 * 60, 0.02 * 75.0 * 60);
}

TEST(GeneratorProperties, HistoriesFollowInjectedGaps) {
  const GeneratorConfig cfg;
  const DisruptionConfig& dc = cfg.disruption;
  std::size_t walked_away = 0;
  for (std::uint64_t index = 0; index < 50; ++index) {
    for (const ConsumerHistory& h : generate_scenario(cfg, index).histories) {
      EXPECT_NO_THROW(validate(h));
      for (const SessionRecord& s : h.sessions) {
        const auto classes = classify_disruptions(s, dc);
        Duration terminal = 0;
        if (!s.disconnections.empty() && is_trailing(s, s.disconnections.size() - 1)) {
          terminal = s.disconnections.back().end - s.disconnections.back().start;
        }
        EXPECT_EQ(s.stay_time, s.required_time - terminal);
        EXPECT_EQ(s.success, terminal == 0);
        EXPECT_NEAR(s.received_energy,
                    s.requested_energy * static_cast<double>(s.stay_time) / static_cast<double>(s.required_time),
                    1e-12);
        if (!classes.empty() && classes.back() == DisruptionClass::Voluntary) {
          EXPECT_LT(s.received_energy, s.requested_energy);
          ++walked_away;
        }
      }
    }
  }
  EXPECT_GT(walked_away, 0u);
}

TEST(GeneratorProperties, SelectionOnGeneratedScenariosIsSound) {
  for (std::uint64_t index = 0; index < 50; ++index) {
    const Scenario sc = generate_scenario(GeneratorConfig{}, index);
    for (const EnergyRequest& r : select_requests(sc.service, sc.requests, index_histories(sc.histories),
                                                  SelectionConfig{})) {
      EXPECT_TRUE(is_composable(sc.service, r, kDefaultMaxDistanceM));
      EXPECT_NO_THROW(validate(r));
    }
  }
}

TEST(Rng, Poisson) {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) sum += static_cast<double>(rng.poisson(23.3));
  EXPECT_NEAR(sum / 20000, 23.3, 0.02 * 23.3);
}

TEST(DeriveSeed, SeparatesStreams) {
  EXPECT_EQ(derive_seed(42, 1, 2), derive_seed(42, 1, 2));
  EXPECT_NE(derive_seed(42, 1, 2), derive_seed(42, 2, 1));
  EXPECT_NE(derive_seed(42, 1, 2), derive_seed(43, 1, 2));
}

// --- transaction ingestion ---

TEST(Ingest, EmptyInputGivesNoRequests) {
  std::istringstream in("");
  const Scenario sc = ingest_transactions(in, GeneratorConfig{});
  EXPECT_TRUE(sc.requests.empty());
  EXPECT_TRUE(sc.histories.empty());
}

TEST(Ingest, OneRowPassesThroughTimeAndLocation) {
  std::istringstream in("consumer_id,date,time,location_x,location_y,shop_id\nU7,2019-04-01,10:15:30,1.5,-2.25,cafe\n");
  const Scenario sc = ingest_transactions(in, GeneratorConfig{});
  ASSERT_EQ(sc.requests.size(), 1u);
  const EnergyRequest& r = sc.requests[0];
  EXPECT_EQ(r.consumer_id, "U7");
  EXPECT_EQ(r.window_start, 1554113730);
  EXPECT_EQ(r.location, (Location{1.5, -2.25}));
  EXPECT_EQ(sc.service.window_start, r.window_start);
  ASSERT_EQ(sc.histories.size(), 1u);
  EXPECT_NO_THROW(validate(sc));
}

TEST(Ingest, RepeatedConsumerSharesOneHistory) {
  std::istringstream in("A,2019-04-01,10:00,0,0,s\nB,2019-04-01,10:05,1,0,s\nA,2019-04-01,10:30,0,1,s\n");
  const Scenario sc = ingest_transactions(in, GeneratorConfig{});
  EXPECT_EQ(sc.requests.size(), 3u);
  EXPECT_EQ(sc.histories.size(), 2u);
}

TEST(Ingest, NonNumericLocationReportsLine) {
  std::istringstream in("A,2019-04-01,10:00,0,0,s\nB,2019-04-01,10:05,east,0,s\n");
  try {
    ingest_transactions(in, GeneratorConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedCSV);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Ingest, RejectsWrongColumnCountAndBadDate) {
  std::istringstream short_row("A,2019-04-01,10:00,0,0\n");
  EXPECT_THROW(ingest_transactions(short_row, GeneratorConfig{}), Error);
  std::istringstream bad_date("A,2019-02-30,10:00,0,0,s\n");
  EXPECT_THROW(ingest_transactions(bad_date, GeneratorConfig{}), Error);
}

TEST(Ingest, MissingFileIsIoError) {
  try {
    ingest_transactions(fs::path("/nonexistent/eaas.csv"), GeneratorConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

}  // namespace
}  // namespace eaas
