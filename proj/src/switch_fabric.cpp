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

#include "asel/switch_fabric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asel/error.hpp"

namespace asel {

namespace {

// Tolerance for comparing sums of tabulated dB values.
constexpr double kLossTieDb = 1e-9;

// Divides out catalog entries largest-first; returns the residual.
int greedy_residual(int t, const SwitchCatalog& catalog) {
  for (const auto& entry : catalog.entries()) {
    while (t > 1 && t % entry.throws == 0) t /= entry.throws;
  }
  return t;
}

// Factorizable throw counts in [lo, hi], ascending.
std::vector<int> factorizable_in(int lo, int hi, const SwitchCatalog& catalog) {
  std::vector<int> out;
  for (int t = std::max(lo, 1); t <= hi; ++t) {
    if (greedy_residual(t, catalog) == 1) out.push_back(t);
  }
  return out;
}

void check_dimensions(int n, int m) {
  if (m < 1 || n < 1 || m > n) {
    throw Error(ErrorCode::kInvalidDimensions,
                "need 1 <= M <= N, got N=" + std::to_string(n) +
                    " M=" + std::to_string(m));
  }
}

}  // namespace

SwitchCatalog SwitchCatalog::Default() {
  return SwitchCatalog({{4, 0.45}, {3, 0.45}, {2, 0.25}});
}

SwitchCatalog::SwitchCatalog(std::vector<SwitchType> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "switch catalog is empty");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const SwitchType& a, const SwitchType& b) { return a.throws > b.throws; });
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (entries_[j].throws < 2) {
      throw Error(ErrorCode::kInvalidConfig, "switch throws must be >= 2");
    }
    if (entries_[j].loss_db < 0.0) {
      throw Error(ErrorCode::kInvalidConfig, "switch loss must be nonnegative");
    }
    if (j > 0 && entries_[j].throws == entries_[j - 1].throws) {
      throw Error(ErrorCode::kInvalidConfig,
                  "duplicate throw count " + std::to_string(entries_[j].throws));
    }
  }
}

SwitchCatalog SwitchCatalog::FromJsonText(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("catalog JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kInvalidConfig, "catalog JSON must be an array");
  }
  std::vector<SwitchType> entries;
  for (const auto& item : doc) {
    if (!item.contains("throws") || !item.contains("loss_db")) {
      throw Error(ErrorCode::kInvalidConfig,
                  "catalog entries need \"throws\" and \"loss_db\"");
    }
    entries.push_back({item.at("throws").get<int>(), item.at("loss_db").get<double>()});
  }
  return SwitchCatalog(std::move(entries));
}

SwitchCatalog SwitchCatalog::FromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open catalog " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return FromJsonText(buf.str());
}

std::string_view to_string(ArchitectureKind kind) {
  switch (kind) {
    case ArchitectureKind::kFullConnectivity: return "FF_FULL";
    case ArchitectureKind::kMinConnectivity: return "FF_MIN_CONN";
    case ArchitectureKind::kMinLoss: return "FF_MIN_LOSS";
    case ArchitectureKind::kPartial: return "PARTIAL";
  }
  return "?";
}

ArchitectureKind architecture_from_string(std::string_view name) {
  for (auto kind : {ArchitectureKind::kFullConnectivity, ArchitectureKind::kMinConnectivity,
                    ArchitectureKind::kMinLoss, ArchitectureKind::kPartial}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown architecture " + std::string(name));
}

std::vector<int> FabricDesign::total_switch_counts() const {
  std::vector<int> total(rf_stage.switch_counts.size(), 0);
  for (std::size_t j = 0; j < total.size(); ++j) {
    total[j] = rf_stage.switch_counts[j] + an_stage.switch_counts[j];
  }
  return total;
}

int round_up_factorizable(int t, const SwitchCatalog& catalog) {
  if (t < 1) t = 1;
  // Terminates: every power of the smallest throw count is factorizable.
  while (greedy_residual(t, catalog) != 1) ++t;
  return t;
}

StageDecomposition decompose_stage(int t, const SwitchCatalog& catalog) {
  StageDecomposition stage;
  stage.realized_throws = round_up_factorizable(t, catalog);
  int q = stage.realized_throws;
  for (const auto& entry : catalog.entries()) {
    stage.q_trace.push_back(q > 1 ? q : 0);
    int count = 0;
    while (q > 1 && q % entry.throws == 0) {
      q /= entry.throws;
      ++count;
    }
    stage.switch_counts.push_back(count);
  }
  return stage;
}

double stage_loss_db(const StageDecomposition& stage, const SwitchCatalog& catalog) {
  double loss = 0.0;
  for (int j = 0; j < catalog.size(); ++j) loss += stage.switch_counts[j] * catalog[j].loss_db;
  return loss;
}

FabricDesign design_fabric(int n, int m, ArchitectureKind kind,
                           const SwitchCatalog& catalog) {
  check_dimensions(n, m);
  FabricDesign design;
  design.kind = kind;
  design.n_antennas = n;
  design.n_chains = m;

  switch (kind) {
    case ArchitectureKind::kFullConnectivity:
      design.rf_stage = decompose_stage(n, catalog);
      design.an_stage = decompose_stage(m, catalog);
      break;
    case ArchitectureKind::kMinConnectivity: {
      design.rf_stage = decompose_stage(n - m + 1, catalog);
      design.an_stage = decompose_stage(std::min(m, design.rf_stage.realized_throws), catalog);
      break;
    }
    case ArchitectureKind::kMinLoss: {
      const int rf_lo = n - m + 1;
      double best = 0.0;
      bool found = false;
      for (int t_rf : factorizable_in(rf_lo, 4 * rf_lo, catalog)) {
        const auto rf = decompose_stage(t_rf, catalog);
        const double rf_loss = stage_loss_db(rf, catalog);
        const int an_lo = std::min(m, t_rf);
        for (int t_an : factorizable_in(an_lo, 4 * an_lo, catalog)) {
          const auto an = decompose_stage(t_an, catalog);
          const double loss = rf_loss + stage_loss_db(an, catalog);
          // Ascending enumeration keeps the lexicographically smallest pair on ties.
          if (!found || loss < best - kLossTieDb) {
            best = loss;
            found = true;
            design.rf_stage = rf;
            design.an_stage = an;
          }
        }
      }
      break;
    }
    case ArchitectureKind::kPartial: {
      if (m == 1) {
        // A single chain reaching every antenna is a fully flexible fabric,
        // so the throw relaxation of the min-loss design applies.
        design = design_fabric(n, m, ArchitectureKind::kMinLoss, catalog);
        design.kind = ArchitectureKind::kPartial;
        return design;
      }
      // With M = N every antenna owns a chain and no switching is needed.
      const int t_rf = (n + m - 1) / m;
      const int t_an = (n == m || n / m >= 2) ? 1 : 2;
      design.rf_stage = decompose_stage(t_rf, catalog);
      design.an_stage = decompose_stage(t_an, catalog);
      break;
    }
  }
  design.t_rf = design.rf_stage.realized_throws;
  design.t_an = design.an_stage.realized_throws;
  design.total_loss_db = critical_path_loss(design, catalog);
  return design;
}

double critical_path_loss(const FabricDesign& design, const SwitchCatalog& catalog) {
  const double sum = stage_loss_db(design.rf_stage, catalog) + stage_loss_db(design.an_stage, catalog);
  // Snap to a 1e-9 dB grid so sums of decimal catalog losses land on the
  // nearest double of the decimal result (7 x 0.45 + 0.25 gives 3.4, not
  // 3.4000000000000004).
  return std::round(sum * 1e9) / 1e9;
}

}  // namespace asel
