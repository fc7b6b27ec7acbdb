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

#ifndef ASEL_SCENARIO_HPP_
#define ASEL_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asel/channel.hpp"
#include "asel/energy.hpp"
#include "asel/switch_fabric.hpp"

namespace asel {

enum class SelectionMode { kPowerFF, kPowerPC, kCsiFF, kCsiPC, kFullMimo };
enum class Precoder { kDpc, kZf };
// How the switch loss L enters: not at all, as a lower SNR rho / L, or as
// extra PA output power that keeps rho intact (energy accounting only).
enum class LossMode { kIgnore, kDivideRho, kPaCompensate };
// How a series produces numbers: simulated channels, one of the two
// analytical approximations, or fabric loss (and energy) without any rates.
enum class Estimator { kMonteCarlo, kApproxSingle, kApproxMixture, kLossOnly };

std::string_view to_string(SelectionMode mode);
std::string_view to_string(Precoder precoder);
std::string_view to_string(LossMode mode);
std::string_view to_string(Estimator estimator);
std::string_view to_string(PowerAccounting accounting);
SelectionMode selection_mode_from_string(std::string_view s);
Precoder precoder_from_string(std::string_view s);
LossMode loss_mode_from_string(std::string_view s);
Estimator estimator_from_string(std::string_view s);
PowerAccounting accounting_from_string(std::string_view s);

bool is_partial(SelectionMode mode);
bool uses_instantaneous_csi(SelectionMode mode);

// One operating point. eta_coh = 0 means no training or uplink overhead.
struct ScenarioConfig {
  int n = 8;
  int m = 8;
  int k = 2;
  double rho_db = 10.0;
  ArchitectureKind architecture = ArchitectureKind::kMinLoss;
  SelectionMode selection = SelectionMode::kPowerFF;
  Precoder precoder = Precoder::kDpc;
  LossMode loss_mode = LossMode::kIgnore;
  int eta_coh = 0;
  double dl_fraction = 0.7;
  int trials = 2000;
  std::uint64_t seed = 1;
  // DPC with waterfilled user powers; false keeps P = I.
  bool waterfill = true;
  CovarianceSpec covariance = CovarianceSpec::Identity();

  // Partial selection needs the PARTIAL fabric; full MIMO has no fabric.
  void validate() const;
  // Antennas actually deployed: m for full MIMO, n otherwise.
  int deployed_antennas() const;
};

struct SeriesSpec {
  std::string name;
  Estimator estimator = Estimator::kMonteCarlo;
  SelectionMode selection = SelectionMode::kPowerFF;
  ArchitectureKind architecture = ArchitectureKind::kMinLoss;
  Precoder precoder = Precoder::kDpc;
  LossMode loss_mode = LossMode::kIgnore;
};

// A family of series evaluated over one swept integer parameter ("M" or
// "eta_coh") on common channel draws.
struct SweepConfig {
  std::string scenario_id = "custom";
  ScenarioConfig base;
  std::string sweep = "M";
  std::vector<int> values;
  std::vector<SeriesSpec> series;
  int g_trials = 5000;
  bool energy = false;
  PowerAccounting accounting = PowerAccounting::kFullBand;
  EnergyParams energy_params;
  SwitchCatalog catalog = SwitchCatalog::Default();

  void validate() const;
  // The scenario a series sees at one sweep value.
  ScenarioConfig point(const SeriesSpec& s, int value) const;
  nlohmann::json to_json() const;
  static SweepConfig FromJson(const nlohmann::json& doc);
};

// Named configurations: fig4 ... fig9, coherence, tableII.
std::vector<std::string> preset_names();
SweepConfig preset(std::string_view name);

}  // namespace asel

#endif  // ASEL_SCENARIO_HPP_
