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

#ifndef ASEL_SWITCH_FABRIC_HPP_
#define ASEL_SWITCH_FABRIC_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace asel {

// One basic single-pole X-throw switch.
struct SwitchType {
  int throws = 2;
  double loss_db = 0.0;
};

// The basic switch inventory, ordered by strictly decreasing throw count.
class SwitchCatalog {
 public:
  // SP4T / SP3T / SP2T at 0.45 / 0.45 / 0.25 dB.
  static SwitchCatalog Default();

  // Reads a JSON array of {"throws": int, "loss_db": float}. Entries are
  // sorted by decreasing throws; duplicates or throws < 2 are rejected.
  static SwitchCatalog FromJsonFile(const std::string& path);
  static SwitchCatalog FromJsonText(std::string_view text);

  explicit SwitchCatalog(std::vector<SwitchType> entries);

  const std::vector<SwitchType>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const SwitchType& operator[](int j) const { return entries_[j]; }

 private:
  std::vector<SwitchType> entries_;
};

enum class ArchitectureKind {
  kFullConnectivity,  // fully flexible, every chain reaches every antenna
  kMinConnectivity,   // fully flexible, fewest ports per stage
  kMinLoss,           // fully flexible, throws relaxed to minimize loss
  kPartial,           // partially connected
};

std::string_view to_string(ArchitectureKind kind);
ArchitectureKind architecture_from_string(std::string_view name);

// Greedy largest-throw-first decomposition of one switching stage.
//
// q_trace[j] is the number of throws still to be realized before catalog
// entry j is applied; a stage that is already exhausted is recorded as 0,
// which is the tabulated convention for Q. switch_counts[j] is the number of
// cascaded switches of entry j on the critical path.
struct StageDecomposition {
  std::vector<int> q_trace;
  std::vector<int> switch_counts;
  int realized_throws = 1;
};

struct FabricDesign {
  ArchitectureKind kind = ArchitectureKind::kFullConnectivity;
  int n_antennas = 0;
  int n_chains = 0;
  int t_rf = 1;
  int t_an = 1;
  StageDecomposition rf_stage;
  StageDecomposition an_stage;
  double total_loss_db = 0.0;

  // S per catalog entry summed over both stages.
  std::vector<int> total_switch_counts() const;
};

// Smallest t' >= t whose greedy decomposition over the catalog leaves no
// residual. t' = 1 means no switch is needed.
int round_up_factorizable(int t, const SwitchCatalog& catalog);

StageDecomposition decompose_stage(int t, const SwitchCatalog& catalog);

// Loss in dB of the switches crossed in one stage.
double stage_loss_db(const StageDecomposition& stage, const SwitchCatalog& catalog);

// Throws invalid-dimensions unless 1 <= m <= n.
FabricDesign design_fabric(int n, int m, ArchitectureKind kind,
                           const SwitchCatalog& catalog);

double critical_path_loss(const FabricDesign& design, const SwitchCatalog& catalog);

}  // namespace asel

#endif  // ASEL_SWITCH_FABRIC_HPP_
