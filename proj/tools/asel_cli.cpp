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

// Command-line front end: fabric, sweep, approx, probs and energy verbs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asel/analysis.hpp"
#include "asel/connectivity.hpp"
#include "asel/energy.hpp"
#include "asel/error.hpp"
#include "asel/experiments.hpp"
#include "asel/result_table.hpp"
#include "asel/scenario.hpp"
#include "asel/switch_fabric.hpp"

namespace {

using asel::ErrorCode;
using nlohmann::json;

// Flags shared by the sweep-style verbs; unset ones leave the config alone.
struct Overrides {
  std::string preset;
  std::string config_path;
  std::optional<int> n, m, k, trials, eta_coh, g_trials, threads;
  std::optional<double> rho_db, dl_fraction;
  std::optional<std::uint64_t> seed;
  std::vector<int> values;
  bool no_waterfill = false;
  std::string format = "csv";
  std::string out = "-";
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--preset", o.preset, "named configuration");
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--n", o.n, "antennas N");
  cmd->add_option("--m", o.m, "RF chains M (fixed value for eta_coh sweeps)");
  cmd->add_option("--k", o.k, "users K");
  cmd->add_option("--rho-db", o.rho_db, "SNR rho in dB");
  cmd->add_option("--trials", o.trials, "Monte Carlo channel draws per point");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--eta-coh", o.eta_coh, "coherence block length, 0 for no overhead");
  cmd->add_option("--dl-fraction", o.dl_fraction, "downlink share of the non-training symbols");
  cmd->add_option("--values", o.values, "sweep values")->delimiter(',');
  cmd->add_option("--g-trials", o.g_trials, "draws of G for the approximations");
  cmd->add_flag("--no-waterfill", o.no_waterfill, "keep P = I for DPC rates");
  cmd->add_option("--threads", o.threads, "worker threads (default: ASEL_THREADS or all cores)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path, - for stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw asel::Error(ErrorCode::kIoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

asel::SweepConfig resolve(const Overrides& o) {
  json doc = json::object();
  if (!o.config_path.empty()) {
    try {
      doc = json::parse(read_file(o.config_path));
    } catch (const json::exception& e) {
      throw asel::Error(ErrorCode::kInvalidConfig, o.config_path + ": " + e.what());
    }
  }
  if (!o.preset.empty()) doc["preset"] = o.preset;
  if (!doc.contains("preset") && !doc.contains("series")) {
    throw asel::Error(ErrorCode::kInvalidConfig, "give --preset or a --config with series");
  }
  asel::SweepConfig c = asel::SweepConfig::FromJson(doc);
  if (o.n) c.base.n = *o.n;
  if (o.m) c.base.m = *o.m;
  if (o.k) c.base.k = *o.k;
  if (o.rho_db) c.base.rho_db = *o.rho_db;
  if (o.trials) c.base.trials = *o.trials;
  if (o.seed) c.base.seed = *o.seed;
  if (o.eta_coh) c.base.eta_coh = *o.eta_coh;
  if (o.dl_fraction) c.base.dl_fraction = *o.dl_fraction;
  if (o.g_trials) c.g_trials = *o.g_trials;
  if (o.no_waterfill) c.base.waterfill = false;
  if (!o.values.empty()) c.values = o.values;
  return c;
}

void run_and_emit(const asel::SweepConfig& c, const Overrides& o) {
  const asel::ResultTable t = asel::run_sweep(c, o.threads.value_or(0));
  asel::emit(t, o.format == "json" ? asel::OutputFormat::kJson : asel::OutputFormat::kCsv, o.out);
}

void print_json(const json& j, const std::string& out) {
  if (out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw asel::Error(ErrorCode::kIoError, "cannot open " + out + " for writing");
  f << j.dump(2) << "\n";
}

json stage_json(const asel::StageDecomposition& s) {
  return {{"q", s.q_trace}, {"s", s.switch_counts}, {"realized_throws", s.realized_throws}};
}

json design_json(const asel::FabricDesign& d) {
  return {{"architecture", asel::to_string(d.kind)},
          {"N", d.n_antennas},
          {"M", d.n_chains},
          {"t_rf", d.t_rf},
          {"t_an", d.t_an},
          {"rf_stage", stage_json(d.rf_stage)},
          {"an_stage", stage_json(d.an_stage)},
          {"switch_counts", d.total_switch_counts()},
          {"loss_db", d.total_loss_db}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antenna-selection switching fabric and sum-rate workbench"};
  app.require_subcommand(1);

  // fabric
  auto* fabric = app.add_subcommand("fabric", "switch fabric designs and insertion losses");
  std::string fabric_preset, fabric_arch = "all", catalog_path, fabric_out = "-",
                             fabric_format = "json";
  int fabric_n = 128, fabric_m = 76;
  fabric->add_option("--preset", fabric_preset, "tableII or fig7");
  fabric->add_option("--n", fabric_n, "antennas N");
  fabric->add_option("--m", fabric_m, "RF chains M");
  fabric->add_option("--architecture", fabric_arch,
                     "FF_FULL, FF_MIN_CONN, FF_MIN_LOSS, PARTIAL or all");
  fabric->add_option("--catalog", catalog_path, "switch catalog JSON");
  fabric->add_option("--format", fabric_format, "json or csv (csv for the fig7 loss table)")
      ->check(CLI::IsMember({"csv", "json"}));
  fabric->add_option("--out", fabric_out, "output path, - for stdout");

  // sweep / approx / energy share the scenario flags
  Overrides sweep_o, approx_o, energy_o;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sum-rate sweeps");
  add_overrides(sweep, sweep_o);
  auto* approx = app.add_subcommand("approx", "analytical ergodic-capacity approximations");
  add_overrides(approx, approx_o);
  bool approx_partial = false;
  approx->add_flag("--partial", approx_partial, "partially connected map (no preset only)");

  auto* energy = app.add_subcommand("energy", "power consumption and energy efficiency");
  add_overrides(energy, energy_o);
  std::string energy_params_path, accounting = "FULL_BAND";
  double loss_db = 0.0, rate_se = 0.0;
  int eta_tr = -1;
  energy->add_option("--params", energy_params_path, "energy parameter JSON");
  energy->add_option("--loss-db", loss_db, "switch loss compensated at the PA (point mode)");
  energy->add_option("--eta-tr", eta_tr, "training symbols (point mode, default K)");
  energy->add_option("--rate", rate_se, "spectral efficiency in bits/s/Hz (point mode)");
  energy->add_option("--accounting", accounting, "FULL_BAND or RESOURCE_BLOCK");

  // probs
  auto* probs = app.add_subcommand("probs", "rank-set selection probabilities");
  int probs_n = 5, probs_m = 2, probs_limit = 12;
  std::uint64_t probs_samples = 1000000, probs_seed = 1;
  bool probs_mc = false;
  std::string probs_out = "-";
  probs->add_option("--n", probs_n, "antennas N");
  probs->add_option("--m", probs_m, "RF chains M");
  probs->add_option("--limit", probs_limit, "largest N enumerated exactly");
  probs->add_option("--samples", probs_samples, "permutations when sampling");
  probs->add_option("--seed", probs_seed, "master seed for sampling");
  probs->add_flag("--monte-carlo", probs_mc, "always sample");
  probs->add_option("--out", probs_out, "output path, - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fabric) {
      const asel::SwitchCatalog catalog = catalog_path.empty()
                                              ? asel::SwitchCatalog::Default()
                                              : asel::SwitchCatalog::FromJsonFile(catalog_path);
      if (fabric_preset == "fig7" || fabric_format == "csv") {
        asel::SweepConfig c = asel::preset(fabric_preset.empty() ? "fig7" : fabric_preset);
        c.catalog = catalog;
        if (fabric_preset.empty()) {
          c.base.n = fabric_n;
          c.values = {fabric_m};
        }
        const asel::ResultTable t = asel::run_sweep(c);
        asel::emit(t, fabric_format == "json" ? asel::OutputFormat::kJson : asel::OutputFormat::kCsv,
                   fabric_out);
      } else {
        if (fabric_preset == "tableII") {
          fabric_n = 128;
          fabric_m = 76;
        } else if (!fabric_preset.empty()) {
          throw asel::Error(ErrorCode::kInvalidConfig, "fabric presets are tableII and fig7");
        }
        json designs = json::array();
        for (auto kind : {asel::ArchitectureKind::kFullConnectivity,
                          asel::ArchitectureKind::kMinConnectivity,
                          asel::ArchitectureKind::kMinLoss, asel::ArchitectureKind::kPartial}) {
          if (fabric_arch != "all" && asel::architecture_from_string(fabric_arch) != kind) continue;
          designs.push_back(design_json(asel::design_fabric(fabric_n, fabric_m, kind, catalog)));
        }
        print_json(designs, fabric_out);
      }
    } else if (*sweep) {
      run_and_emit(resolve(sweep_o), sweep_o);
    } else if (*approx) {
      asel::SweepConfig c;
      if (approx_o.preset.empty() && approx_o.config_path.empty()) {
        using asel::Estimator;
        using asel::SelectionMode;
        const auto arch = approx_partial ? asel::ArchitectureKind::kPartial
                                         : asel::ArchitectureKind::kMinLoss;
        const auto sel = approx_partial ? SelectionMode::kPowerPC : SelectionMode::kPowerFF;
        json doc = {{"scenario_id", "approx"}};
        doc["series"] = json::array();
        for (auto est : {Estimator::kApproxSingle, Estimator::kApproxMixture}) {
          if (!approx_partial && est == Estimator::kApproxMixture) continue;
          doc["series"].push_back({{"name", est == Estimator::kApproxSingle ? "approx_single"
                                                                          : "approx_mixture"},
                                   {"estimator", asel::to_string(est)},
                                   {"selection", asel::to_string(sel)},
                                   {"architecture", asel::to_string(arch)}});
        }
        c = asel::SweepConfig::FromJson(doc);
        const Overrides& o = approx_o;
        c.base.n = o.n.value_or(8);
        c.base.k = o.k.value_or(2);
        c.base.rho_db = o.rho_db.value_or(10.0);
        c.base.seed = o.seed.value_or(1);
        c.g_trials = o.g_trials.value_or(5000);
        c.base.eta_coh = o.eta_coh.value_or(0);
        c.values = o.values;
        if (c.values.empty() && o.m) c.values = {*o.m};
        if (c.values.empty()) {
          for (int v = 1; v <= c.base.n; ++v) c.values.push_back(v);
        }
      } else {
        c = resolve(approx_o);
        std::vector<asel::SeriesSpec> kept;
        for (const auto& s : c.series) {
          if (s.estimator == asel::Estimator::kApproxSingle ||
              s.estimator == asel::Estimator::kApproxMixture) {
            kept.push_back(s);
          }
        }
        if (kept.empty()) throw asel::Error(ErrorCode::kInvalidConfig, "configuration has no approximation series");
        c.series = kept;
      }
      run_and_emit(c, approx_o);
    } else if (*probs) {
      const asel::ConnectivityMap map = asel::build_connectivity(probs_n, probs_m);
      asel::RankSetOptions opts;
      opts.enumeration_limit = probs_mc ? 0 : probs_limit;
      opts.monte_carlo_samples = probs_samples;
      opts.stream = asel::RngStreamSpec{probs_seed};
      const asel::RankSetDistribution dist = asel::rank_set_distribution(map, opts);
      json arr = json::array();
      for (const auto& s : dist.sets) arr.push_back({{"ranks", s.ranks}, {"p", s.p}});
      print_json(arr, probs_out);
      if (!dist.exact) {
        std::fprintf(stderr, "note: %llu sampled permutations, probabilities are estimates\n",
                     static_cast<unsigned long long>(dist.samples));
      }
    } else if (*energy) {
      if (!energy_o.preset.empty() || !energy_o.config_path.empty()) {
        asel::SweepConfig c = resolve(energy_o);
        c.energy = true;
        if (!energy_params_path.empty()) c.energy_params = asel::EnergyParams::FromJsonFile(energy_params_path);
        if (energy->count("--accounting") > 0) c.accounting = asel::accounting_from_string(accounting);
        run_and_emit(c, energy_o);
      } else {
        const asel::EnergyParams params = energy_params_path.empty()
                                              ? asel::EnergyParams{}
                                              : asel::EnergyParams::FromJsonFile(energy_params_path);
        params.validate();
        const int m = energy_o.m.value_or(32);
        const int k = energy_o.k.value_or(16);
        const int eta_coh = energy_o.eta_coh.value_or(200);
        const asel::FrameConfig frame =
            eta_coh == 0 ? asel::no_overhead_frame()
                         : asel::frame_split(eta_coh, eta_tr < 0 ? k : eta_tr,
                                             energy_o.dl_fraction.value_or(0.7));
        const auto acc = asel::accounting_from_string(accounting);
        asel::EnergyReport r = asel::total_power(m, k, loss_db, frame, params, acc);
        r = asel::energy_efficiency(rate_se, asel::rate_bandwidth(params, acc), r);
        print_json({{"M", m},
                    {"K", k},
                    {"eta_tr", frame.eta_tr},
                    {"eta_dl", frame.eta_dl},
                    {"eta_coh", frame.eta_coh},
                    {"loss_db", loss_db},
                    {"p_pa", r.p_pa},
                    {"p_rf", r.p_rf},
                    {"p_conv", r.p_conv},
                    {"p_int", r.p_int},
                    {"p_bb", r.p_bb},
                    {"total", r.total},
                    {"r_sum_bps", r.r_sum_bps},
                    {"xi", r.xi}},
                   energy_o.out);
      }
    }
  } catch (const asel::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
