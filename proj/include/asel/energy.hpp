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

#ifndef ASEL_ENERGY_HPP_
#define ASEL_ENERGY_HPP_

#include <string>
#include <string_view>

#include "asel/rates.hpp"

namespace asel {

// Base-station power model. Powers in W, sampling rates in GSPS per I/Q port.
struct EnergyParams {
  double p_adc = 0.233;
  double p_dac = 0.232;
  double p_int_per_gbps = 0.025;
  double p_cir = 1.0;
  double p_lo = 2.0;
  double inv_pc_flops_per_mw = 12.8e6;
  double kappa = 0.39;
  double p_t_dbm = 46.0;
  double b_adc = 12.0;
  double b_dac = 14.0;
  double s_adc = 0.125;
  double s_dac = 0.125;
  double n_coh = 1200.0;
  double bandwidth_hz = 20e6;
  double rb_hz = 180e3;

  // Any subset of the field names above; missing keys keep their defaults.
  static EnergyParams FromJsonText(std::string_view text);
  static EnergyParams FromJsonFile(const std::string& path);

  void validate() const;
};

// Whole band, or one resource block that receives a B_RB / B share of the
// transmit power while every other term is charged to it in full.
enum class PowerAccounting { kFullBand, kResourceBlock };

struct EnergyReport {
  double p_pa = 0.0;
  double p_rf = 0.0;
  double p_conv = 0.0;  // M * (duty-cycled ADC + DAC)
  double p_int = 0.0;   // M * duty-cycled data interface
  double p_bb = 0.0;
  double total = 0.0;
  double r_sum_bps = 0.0;
  double xi = 0.0;  // bits per Joule
};

// Data-interface power per RF chain with both converters always on.
double interface_power(const EnergyParams& params);

struct BasebandFlops {
  double corr = 0.0;
  double data = 0.0;
  double total() const { return corr + data; }
};

// Pilot correlation 8 N_coh eta_tr M K plus precoding N_coh (4 K^2 M + 8 eta_dl K M).
BasebandFlops baseband_flops(double n_coh, int eta_tr, int eta_dl, int m, int k);

// Power side of the report. The PA output is raised by the switch loss and
// is on for the downlink share of the block, as are the DACs; ADCs run during
// training only. The interface follows its converters.
EnergyReport total_power(int m, int k, double loss_db, const FrameConfig& frame,
                         const EnergyParams& params,
                         PowerAccounting accounting = PowerAccounting::kFullBand);

// Fills r_sum_bps and xi from a spectral efficiency (prelog already applied).
EnergyReport energy_efficiency(double rate_bits_per_s_per_hz, double bandwidth_for_rate,
                               EnergyReport power);

// Bandwidth that rates are charged over under the given accounting.
double rate_bandwidth(const EnergyParams& params, PowerAccounting accounting);

}  // namespace asel

#endif  // ASEL_ENERGY_HPP_
