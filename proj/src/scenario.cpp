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

#include "asel/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asel/error.hpp"

namespace asel {
namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::pair<Enum, std::string_view> (&table)[N],
                std::string_view what) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown " + std::string(what) + " " + std::string(s));
}

template <typename Enum, std::size_t N>
std::string_view name_of(Enum e, const std::pair<Enum, std::string_view> (&table)[N]) {
  for (const auto& [value, name] : table) {
    if (value == e) return name;
  }
  return "?";
}

constexpr std::pair<SelectionMode, std::string_view> kSelectionNames[] = {
    {SelectionMode::kPowerFF, "POWER_FF"}, {SelectionMode::kPowerPC, "POWER_PC"},
    {SelectionMode::kCsiFF, "CSI_FF"},     {SelectionMode::kCsiPC, "CSI_PC"},
    {SelectionMode::kFullMimo, "FULL_MIMO"},
};
constexpr std::pair<Precoder, std::string_view> kPrecoderNames[] = {
    {Precoder::kDpc, "DPC_EQ2"}, {Precoder::kZf, "ZF"},
};
constexpr std::pair<LossMode, std::string_view> kLossNames[] = {
    {LossMode::kIgnore, "IGNORE"},
    {LossMode::kDivideRho, "DIVIDE_RHO"},
    {LossMode::kPaCompensate, "PA_COMPENSATE"},
};
constexpr std::pair<Estimator, std::string_view> kEstimatorNames[] = {
    {Estimator::kMonteCarlo, "MONTE_CARLO"},
    {Estimator::kApproxSingle, "APPROX_SINGLE"},
    {Estimator::kApproxMixture, "APPROX_MIXTURE"},
    {Estimator::kLossOnly, "LOSS_ONLY"},
};
constexpr std::pair<PowerAccounting, std::string_view> kAccountingNames[] = {
    {PowerAccounting::kFullBand, "FULL_BAND"},
    {PowerAccounting::kResourceBlock, "RESOURCE_BLOCK"},
};

std::vector<int> range(int first, int last, int step = 1) {
  std::vector<int> v;
  for (int x = first; x <= last; x += step) v.push_back(x);
  return v;
}

SeriesSpec series(std::string name, Estimator est, SelectionMode sel, ArchitectureKind arch,
                  Precoder pre, LossMode loss) {
  return {std::move(name), est, sel, arch, pre, loss};
}

}  // namespace

std::string_view to_string(SelectionMode mode) { return name_of(mode, kSelectionNames); }
std::string_view to_string(Precoder precoder) { return name_of(precoder, kPrecoderNames); }
std::string_view to_string(LossMode mode) { return name_of(mode, kLossNames); }
std::string_view to_string(Estimator estimator) { return name_of(estimator, kEstimatorNames); }
std::string_view to_string(PowerAccounting accounting) {
  return name_of(accounting, kAccountingNames);
}
SelectionMode selection_mode_from_string(std::string_view s) {
  return parse_enum(s, kSelectionNames, "selection mode");
}
Precoder precoder_from_string(std::string_view s) {
  return parse_enum(s, kPrecoderNames, "precoder");
}
LossMode loss_mode_from_string(std::string_view s) {
  return parse_enum(s, kLossNames, "loss mode");
}
Estimator estimator_from_string(std::string_view s) {
  return parse_enum(s, kEstimatorNames, "estimator");
}
PowerAccounting accounting_from_string(std::string_view s) {
  return parse_enum(s, kAccountingNames, "power accounting");
}

bool is_partial(SelectionMode mode) {
  return mode == SelectionMode::kPowerPC || mode == SelectionMode::kCsiPC;
}

bool uses_instantaneous_csi(SelectionMode mode) {
  return mode == SelectionMode::kCsiFF || mode == SelectionMode::kCsiPC;
}

void ScenarioConfig::validate() const {
  if (k < 1 || m < 1 || n < 1 || m > n) {
    throw Error(ErrorCode::kInvalidDimensions, "scenario needs 1 <= M <= N and K >= 1");
  }
  if (trials < 1) throw Error(ErrorCode::kInvalidConfig, "trials must be >= 1");
  if (eta_coh < 0) throw Error(ErrorCode::kInvalidConfig, "eta_coh must be >= 0");
  if (!(dl_fraction > 0.0 && dl_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "dl_fraction must lie in (0, 1]");
  }
  if (is_partial(selection) && architecture != ArchitectureKind::kPartial) {
    throw Error(ErrorCode::kInvalidConfig, "partial selection requires the PARTIAL architecture");
  }
  if (!is_partial(selection) && selection != SelectionMode::kFullMimo &&
      architecture == ArchitectureKind::kPartial) {
    throw Error(ErrorCode::kInvalidConfig, "the PARTIAL architecture needs a partial selection mode");
  }
  if (!covariance.is_identity() && covariance.dimension() != k) {
    throw Error(ErrorCode::kInvalidDimensions, "covariance must be K x K");
  }
}

int ScenarioConfig::deployed_antennas() const {
  return selection == SelectionMode::kFullMimo ? m : n;
}

ScenarioConfig SweepConfig::point(const SeriesSpec& s, int value) const {
  ScenarioConfig c = base;
  c.selection = s.selection;
  c.architecture = s.architecture;
  c.precoder = s.precoder;
  c.loss_mode = s.loss_mode;
  if (sweep == "M") {
    c.m = value;
  } else {
    c.eta_coh = value;
  }
  return c;
}

void SweepConfig::validate() const {
  if (sweep != "M" && sweep != "eta_coh") {
    throw Error(ErrorCode::kInvalidConfig, "sweep must be \"M\" or \"eta_coh\"");
  }
  if (values.empty()) throw Error(ErrorCode::kInvalidConfig, "sweep has no values");
  if (series.empty()) throw Error(ErrorCode::kInvalidConfig, "sweep has no series");
  if (g_trials < 1) throw Error(ErrorCode::kInvalidConfig, "g_trials must be >= 1");
  energy_params.validate();
  for (const SeriesSpec& s : series) {
    if (s.name.empty()) throw Error(ErrorCode::kInvalidConfig, "series without a name");
    for (int v : values) point(s, v).validate();
  }
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json j;
  j["scenario_id"] = scenario_id;
  j["n"] = base.n;
  j["m"] = base.m;
  j["k"] = base.k;
  j["rho_db"] = base.rho_db;
  j["eta_coh"] = base.eta_coh;
  j["dl_fraction"] = base.dl_fraction;
  j["trials"] = base.trials;
  j["seed"] = base.seed;
  j["waterfill"] = base.waterfill;
  if (base.covariance.is_identity()) {
    j["covariance"] = "identity";
  } else {
    const Eigen::MatrixXcd r = base.covariance.sqrt() * base.covariance.sqrt().adjoint();
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index a = 0; a < r.rows(); ++a) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index b = 0; b < r.cols(); ++b) row.push_back({r(a, b).real(), r(a, b).imag()});
      rows.push_back(row);
    }
    j["covariance"] = {{"matrix", rows}};
  }
  j["sweep"] = sweep;
  j["values"] = values;
  nlohmann::json ss = nlohmann::json::array();
  for (const SeriesSpec& s : series) {
    ss.push_back({{"name", s.name},
                  {"estimator", to_string(s.estimator)},
                  {"selection", to_string(s.selection)},
                  {"architecture", to_string(s.architecture)},
                  {"precoder", to_string(s.precoder)},
                  {"loss_mode", to_string(s.loss_mode)}});
  }
  j["series"] = ss;
  j["g_trials"] = g_trials;
  j["energy"] = energy;
  j["accounting"] = to_string(accounting);
  const EnergyParams& e = energy_params;
  j["energy_params"] = {{"p_adc", e.p_adc},
                        {"p_dac", e.p_dac},
                        {"p_int_per_gbps", e.p_int_per_gbps},
                        {"p_cir", e.p_cir},
                        {"p_lo", e.p_lo},
                        {"inv_pc_flops_per_mw", e.inv_pc_flops_per_mw},
                        {"kappa", e.kappa},
                        {"p_t_dbm", e.p_t_dbm},
                        {"b_adc", e.b_adc},
                        {"b_dac", e.b_dac},
                        {"s_adc", e.s_adc},
                        {"s_dac", e.s_dac},
                        {"n_coh", e.n_coh},
                        {"bandwidth_hz", e.bandwidth_hz},
                        {"rb_hz", e.rb_hz}};
  nlohmann::json cat = nlohmann::json::array();
  for (const SwitchType& t : catalog.entries()) cat.push_back({{"throws", t.throws}, {"loss_db", t.loss_db}});
  j["catalog"] = cat;
  return j;
}

SweepConfig SweepConfig::FromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object");
  try {
    SweepConfig c = doc.contains("preset") ? preset(doc.at("preset").get<std::string>())
                                           : SweepConfig{};
    for (const auto& [key, v] : doc.items()) {
      if (key == "preset") {
      } else if (key == "scenario_id") {
        c.scenario_id = v.get<std::string>();
      } else if (key == "n") {
        c.base.n = v.get<int>();
      } else if (key == "m") {
        c.base.m = v.get<int>();
      } else if (key == "k") {
        c.base.k = v.get<int>();
      } else if (key == "rho_db") {
        c.base.rho_db = v.get<double>();
      } else if (key == "eta_coh") {
        c.base.eta_coh = v.get<int>();
      } else if (key == "dl_fraction") {
        c.base.dl_fraction = v.get<double>();
      } else if (key == "trials") {
        c.base.trials = v.get<int>();
      } else if (key == "seed") {
        c.base.seed = v.get<std::uint64_t>();
      } else if (key == "waterfill") {
        c.base.waterfill = v.get<bool>();
      } else if (key == "covariance") {
        if (v.is_string() && v.get<std::string>() == "identity") {
          c.base.covariance = CovarianceSpec::Identity();
        } else if (v.is_object() && v.contains("exponential")) {
          // R_ab = r^|a - b| across the K users.
          const double r = v.at("exponential").get<double>();
          const int k = c.base.k;
          Eigen::MatrixXcd cov(k, k);
          for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) cov(a, b) = std::pow(r, std::abs(a - b));
          }
          c.base.covariance = CovarianceSpec::FromMatrix(cov);
        } else if (v.is_object() && v.contains("matrix")) {
          const auto& rows = v.at("matrix");
          const auto k = static_cast<Eigen::Index>(rows.size());
          Eigen::MatrixXcd cov(k, k);
          for (Eigen::Index a = 0; a < k; ++a) {
            for (Eigen::Index b = 0; b < k; ++b) {
              const auto& e = rows.at(a).at(b);
              cov(a, b) = e.is_array() ? std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>())
                                       : std::complex<double>(e.get<double>(), 0.0);
            }
          }
          c.base.covariance = CovarianceSpec::FromMatrix(cov);
        } else {
          throw Error(ErrorCode::kInvalidConfig, "covariance must be \"identity\", {\"exponential\": r} or {\"matrix\": ...}");
        }
      } else if (key == "sweep") {
        c.sweep = v.get<std::string>();
      } else if (key == "values") {
        c.values = v.get<std::vector<int>>();
      } else if (key == "series") {
        c.series.clear();
        for (const auto& s : v) {
          SeriesSpec spec;
          spec.name = s.at("name").get<std::string>();
          if (s.contains("estimator")) spec.estimator = estimator_from_string(s.at("estimator").get<std::string>());
          if (s.contains("selection")) spec.selection = selection_mode_from_string(s.at("selection").get<std::string>());
          if (s.contains("architecture")) spec.architecture = architecture_from_string(s.at("architecture").get<std::string>());
          if (s.contains("precoder")) spec.precoder = precoder_from_string(s.at("precoder").get<std::string>());
          if (s.contains("loss_mode")) spec.loss_mode = loss_mode_from_string(s.at("loss_mode").get<std::string>());
          c.series.push_back(std::move(spec));
        }
      } else if (key == "g_trials") {
        c.g_trials = v.get<int>();
      } else if (key == "energy") {
        c.energy = v.get<bool>();
      } else if (key == "accounting") {
        c.accounting = accounting_from_string(v.get<std::string>());
      } else if (key == "energy_params") {
        c.energy_params = EnergyParams::FromJsonText(v.dump());
      } else if (key == "catalog") {
        c.catalog = SwitchCatalog::FromJsonText(v.dump());
      } else {
        throw Error(ErrorCode::kInvalidConfig, "unknown config key " + key);
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("config JSON: ") + e.what());
  }
}

std::vector<std::string> preset_names() {
  return {"tableII", "fig4", "fig5", "fig6", "coherence", "fig7", "fig8", "fig9"};
}

SweepConfig preset(std::string_view name) {
  using A = ArchitectureKind;
  using E = Estimator;
  using S = SelectionMode;
  using P = Precoder;
  using L = LossMode;
  SweepConfig c;
  c.scenario_id = std::string(name);
  ScenarioConfig& b = c.base;
  if (name == "tableII" || name == "fig7") {
    b.n = 128;
    c.values = name == "tableII" ? std::vector<int>{76} : range(1, 128);
    for (A a : {A::kFullConnectivity, A::kMinConnectivity, A::kMinLoss, A::kPartial}) {
      const S sel = a == A::kPartial ? S::kPowerPC : S::kPowerFF;
      c.series.push_back(series(std::string(to_string(a)), E::kLossOnly, sel, a, P::kDpc, L::kIgnore));
    }
  } else if (name == "fig4") {
    b.n = 8;
    b.k = 2;
    b.rho_db = 10.0;
    c.values = range(2, 8);
    c.series = {
        series("full_mimo", E::kMonteCarlo, S::kFullMimo, A::kMinLoss, P::kDpc, L::kIgnore),
        series("csi_ff", E::kMonteCarlo, S::kCsiFF, A::kMinLoss, P::kDpc, L::kIgnore),
        series("power_ff", E::kMonteCarlo, S::kPowerFF, A::kMinLoss, P::kDpc, L::kIgnore),
        series("power_pc", E::kMonteCarlo, S::kPowerPC, A::kPartial, P::kDpc, L::kIgnore),
        series("approx_ff", E::kApproxSingle, S::kPowerFF, A::kMinLoss, P::kDpc, L::kIgnore),
        series("approx_pc_single", E::kApproxSingle, S::kPowerPC, A::kPartial, P::kDpc, L::kIgnore),
        series("approx_pc_mixture", E::kApproxMixture, S::kPowerPC, A::kPartial, P::kDpc, L::kIgnore),
    };
  } else if (name == "fig5") {
    b.n = 128;
    b.k = 16;
    b.rho_db = 15.0;
    b.eta_coh = 200;
    c.values = {16, 24, 32, 33, 40, 42, 43, 48, 56, 63, 64, 72, 80, 96, 112, 127, 128};
    for (P p : {P::kDpc, P::kZf}) {
      const std::string tag = p == P::kDpc ? "_dpc" : "_zf";
      c.series.push_back(series("full_mimo" + tag, E::kMonteCarlo, S::kFullMimo, A::kMinLoss, p, L::kIgnore));
      c.series.push_back(series("csi_ff" + tag, E::kMonteCarlo, S::kCsiFF, A::kMinLoss, p, L::kIgnore));
      c.series.push_back(series("power_ff" + tag, E::kMonteCarlo, S::kPowerFF, A::kMinLoss, p, L::kIgnore));
      c.series.push_back(series("power_pc" + tag, E::kMonteCarlo, S::kPowerPC, A::kPartial, p, L::kIgnore));
    }
  } else if (name == "fig6" || name == "coherence") {
    b.n = 64;
    b.k = 8;
    b.rho_db = 20.0;
    if (name == "fig6") {
      c.values = range(8, 64, 4);
    } else {
      b.m = 8;
      c.sweep = "eta_coh";
      c.values = {50, 100, 150, 200, 300, 400, 500, 750, 1000, 1250, 1500, 1750, 2000};
    }
    c.series = {
        series("full_mimo", E::kMonteCarlo, S::kFullMimo, A::kMinLoss, P::kDpc, L::kDivideRho),
        series("csi_ff", E::kMonteCarlo, S::kCsiFF, A::kMinLoss, P::kDpc, L::kDivideRho),
        series("csi_pc", E::kMonteCarlo, S::kCsiPC, A::kPartial, P::kDpc, L::kDivideRho),
        series("power_ff", E::kMonteCarlo, S::kPowerFF, A::kMinLoss, P::kDpc, L::kDivideRho),
        series("power_pc", E::kMonteCarlo, S::kPowerPC, A::kPartial, P::kDpc, L::kDivideRho),
    };
  } else if (name == "fig8") {
    b.n = 128;
    b.k = 16;
    b.eta_coh = 200;
    c.values = range(16, 128, 4);
    c.energy = true;
    for (A a : {A::kFullConnectivity, A::kMinConnectivity, A::kMinLoss, A::kPartial}) {
      const S sel = a == A::kPartial ? S::kPowerPC : S::kPowerFF;
      c.series.push_back(series(std::string(to_string(a)), E::kLossOnly, sel, a, P::kZf, L::kPaCompensate));
    }
  } else if (name == "fig9") {
    b.n = 128;
    b.k = 16;
    b.rho_db = 15.0;
    b.eta_coh = 200;
    c.values = range(16, 64, 4);
    for (int v : range(72, 128, 8)) c.values.push_back(v);
    c.energy = true;
    c.accounting = PowerAccounting::kResourceBlock;
    c.series = {
        series("power_pc", E::kMonteCarlo, S::kPowerPC, A::kPartial, P::kZf, L::kPaCompensate),
        series("power_ff_min_loss", E::kMonteCarlo, S::kPowerFF, A::kMinLoss, P::kZf, L::kPaCompensate),
        series("power_ff_full", E::kMonteCarlo, S::kPowerFF, A::kFullConnectivity, P::kZf, L::kPaCompensate),
        series("power_ff_min_conn", E::kMonteCarlo, S::kPowerFF, A::kMinConnectivity, P::kZf, L::kPaCompensate),
        series("csi_ff_min_loss", E::kMonteCarlo, S::kCsiFF, A::kMinLoss, P::kZf, L::kPaCompensate),
        series("csi_pc", E::kMonteCarlo, S::kCsiPC, A::kPartial, P::kZf, L::kPaCompensate),
    };
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown preset " + std::string(name));
  }
  return c;
}

}  // namespace asel
