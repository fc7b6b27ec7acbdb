// Copyright 2026 The Authors.
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


#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "asel/error.hpp"
#include "asel/experiments.hpp"
#include "asel/result_table.hpp"
#include "asel/scenario.hpp"

using namespace asel;

namespace {

std::string csv_of(const ResultTable& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

const ResultRow& find_row(const ResultTable& t, const std::string& series, int m,
                          const std::string& metric = "sum_rate") {
  for (const ResultRow& r : t.rows) {
    if (r.series == series && r.m == m && r.metric == metric) return r;
  }
  FAIL("missing row " << series << " M=" << m << " " << metric);
  throw 0;
}

SweepConfig small_fig4(int trials) {
  SweepConfig cfg = preset("fig4");
  cfg.base.trials = trials;
  cfg.g_trials = 500;
  cfg.values = {2, 5};
  return cfg;
}

}  // namespace

TEST_CASE("every preset validates and round-trips through JSON") {
  const auto names = preset_names();
  CHECK(names.size() >= 8);
  for (const std::string& name : names) {
    CAPTURE(name);
    const SweepConfig cfg = preset(name);
    CHECK_NOTHROW(cfg.validate());
    const SweepConfig back = SweepConfig::FromJson(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
  }
  CHECK_THROWS_AS(preset("nope"), Error);
}

TEST_CASE("config keys are checked") {
  nlohmann::json doc = preset("fig4").to_json();
  doc["bogus"] = 1;
  CHECK_THROWS_AS(SweepConfig::FromJson(doc), Error);
  nlohmann::json over = {{"preset", "fig6"}, {"trials", 7}};
  const SweepConfig cfg = SweepConfig::FromJson(over);
  CHECK(cfg.base.trials == 7);
  CHECK(cfg.base.n == 64);
}

TEST_CASE("one point, one trial, one row") {
  SweepConfig cfg;
  cfg.scenario_id = "tiny";
  cfg.base.n = 4;
  cfg.base.m = 2;
  cfg.base.k = 1;
  cfg.base.trials = 1;
  cfg.values = {2};
  cfg.series = {SeriesSpec{"p", Estimator::kMonteCarlo, SelectionMode::kPowerFF,
                           ArchitectureKind::kMinLoss, Precoder::kDpc, LossMode::kIgnore}};
  const ResultTable t = run_sweep(cfg, 1);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].metric == "sum_rate");
  CHECK(t.rows[0].trials == 1);
  CHECK(t.rows[0].mean_rate > 0.0);
  CHECK(t.rows[0].flags.empty());
}

TEST_CASE("CSV round trip is lossless at the printed precision") {
  const ResultTable t = run_sweep(small_fig4(50), 1);
  const std::string text = csv_of(t);
  std::istringstream in(text);
  const ResultTable back = read_csv(in);
  CHECK(back.config_hash == t.config_hash);
  CHECK(back.seed == t.seed);
  REQUIRE(back.rows.size() == t.rows.size());
  CHECK(csv_of(back) == text);
}

TEST_CASE("reruns are byte-identical whatever the thread count") {
  const SweepConfig cfg = small_fig4(60);
  const std::string a = csv_of(run_sweep(cfg, 1));
  const std::string b = csv_of(run_sweep(cfg, 1));
  const std::string c = csv_of(run_sweep(cfg, 3));
  CHECK(a == b);
  CHECK(a == c);
  SweepConfig other = cfg;
  other.base.seed = 2;
  CHECK(csv_of(run_sweep(other, 1)) != a);
}

TEST_CASE("JSON output carries the column list") {
  const ResultTable t = run_sweep(small_fig4(20), 1);
  std::ostringstream os;
  write_json(t, os);
  const nlohmann::json doc = nlohmann::json::parse(os.str());
  CHECK(doc.at("config_hash") == t.config_hash);
  CHECK(doc.at("columns").size() == result_columns().size());
  REQUIRE(doc.at("rows").size() == t.rows.size());
  CHECK(doc.at("rows")[0].size() == result_columns().size());
  CHECK(doc.at("rows")[0].at("M").get<int>() == t.rows[0].m);
}

TEST_CASE("emit reports an unwritable path") {
  const ResultTable t;
  try {
    emit(t, OutputFormat::kCsv, "/nonexistent-dir/x.csv");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIoError);
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
}

TEST_CASE("fig7 loss curves: four architectures, PARTIAL lowest") {
  const ResultTable t = run_sweep(preset("fig7"), 1);
  std::map<std::string, int> count;
  for (const ResultRow& r : t.rows) {
    if (r.metric == "loss_db") ++count[r.architecture];
  }
  REQUIRE(count.size() == 4);
  for (const auto& [arch, c] : count) CHECK(c == 128);
  for (int m = 1; m <= 128; ++m) {
    double partial = 0.0, lowest_other = 1e9;
    for (const ResultRow& r : t.rows) {
      if (r.metric != "loss_db" || r.m != m) continue;
      if (r.architecture == "PARTIAL") {
        partial = r.mean_rate;
      } else {
        lowest_other = std::min(lowest_other, r.mean_rate);
      }
    }
    CAPTURE(m);
    CHECK(partial <= lowest_other + 1e-12);
  }
}

TEST_CASE("selecting every antenna is full MIMO") {
  ScenarioConfig s;
  s.n = 6;
  s.m = 6;
  s.k = 2;
  s.trials = 300;
  const RateEstimate sel = ergodic_rate(s);
  ScenarioConfig f = s;
  f.selection = SelectionMode::kFullMimo;
  f.architecture = ArchitectureKind::kFullConnectivity;
  const RateEstimate full = ergodic_rate(f);
  CHECK(sel.mean == doctest::Approx(full.mean).epsilon(1e-12));
}

TEST_CASE("standard error shrinks like one over root trials") {
  ScenarioConfig s;
  s.trials = 1000;
  const RateEstimate a = ergodic_rate(s);
  s.trials = 4000;
  const RateEstimate b = ergodic_rate(s);
  const double ratio = a.std_error / b.std_error;
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("power-based FF rate grows with M") {
  ScenarioConfig s;
  s.n = 8;
  s.k = 2;
  s.trials = 400;
  double prev = 0.0;
  for (int m = 2; m <= 8; ++m) {
    s.m = m;
    const double r = ergodic_rate(s).mean;
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("a training phase longer than the frame is flagged, not fatal") {
  SweepConfig cfg = preset("coherence");
  cfg.base.trials = 5;
  cfg.values = {2};
  cfg.series.resize(1);
  const ResultTable t = run_sweep(cfg, 1);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].flags.find("infeasible-frame") != std::string::npos);
  CHECK(t.rows[0].mean_rate == 0.0);
}

TEST_CASE("invalid scenarios are rejected") {
  ScenarioConfig s;
  s.selection = SelectionMode::kPowerPC;
  CHECK_THROWS_AS(s.validate(), Error);
  s.architecture = ArchitectureKind::kPartial;
  CHECK_NOTHROW(s.validate());
  s.m = 9;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("fig4 approximations track simulation") {
  SweepConfig cfg = small_fig4(2000);
  cfg.g_trials = 3000;
  const ResultTable t = run_sweep(cfg, 0);
  for (int m : cfg.values) {
    CAPTURE(m);
    const double ff = find_row(t, "power_ff", m).mean_rate;
    const double pc = find_row(t, "power_pc", m).mean_rate;
    CHECK(std::abs(find_row(t, "approx_ff", m, "approx_single").mean_rate / ff - 1) < 0.05);
    CHECK(std::abs(find_row(t, "approx_pc_single", m, "approx_single").mean_rate / pc - 1) < 0.05);
    CHECK(std::abs(find_row(t, "approx_pc_mixture", m, "approx_mixture").mean_rate / pc - 1) < 0.05);
  }
}
