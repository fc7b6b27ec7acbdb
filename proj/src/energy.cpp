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

#include "asel/energy.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asel/error.hpp"
#include "asel/units.hpp"

namespace asel {

EnergyParams EnergyParams::FromJsonText(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("energy JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidConfig, "energy JSON must be an object");
  EnergyParams p;
  const std::pair<const char*, double*> fields[] = {
      {"p_adc", &p.p_adc},       {"p_dac", &p.p_dac},
      {"p_int_per_gbps", &p.p_int_per_gbps},
      {"p_cir", &p.p_cir},       {"p_lo", &p.p_lo},
      {"inv_pc_flops_per_mw", &p.inv_pc_flops_per_mw},
      {"kappa", &p.kappa},       {"p_t_dbm", &p.p_t_dbm},
      {"b_adc", &p.b_adc},       {"b_dac", &p.b_dac},
      {"s_adc", &p.s_adc},       {"s_dac", &p.s_dac},
      {"n_coh", &p.n_coh},       {"bandwidth_hz", &p.bandwidth_hz},
      {"rb_hz", &p.rb_hz},
  };
  for (const auto& [key, it] : doc.items()) {
    bool known = false;
    for (const auto& [name, slot] : fields) {
      if (key == name) {
        if (!it.is_number()) throw Error(ErrorCode::kInvalidConfig, "energy field " + key + " must be numeric");
        *slot = it.get<double>();
        known = true;
      }
    }
    if (!known) throw Error(ErrorCode::kInvalidConfig, "unknown energy field " + key);
  }
  p.validate();
  return p;
}

EnergyParams EnergyParams::FromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open energy parameters " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return FromJsonText(buf.str());
}

void EnergyParams::validate() const {
  const double positives[] = {p_adc, p_dac, p_int_per_gbps, p_cir, p_lo, inv_pc_flops_per_mw,
                              kappa, b_adc, b_dac, s_adc, s_dac, n_coh, bandwidth_hz, rb_hz};
  for (double v : positives) {
    if (!(v > 0.0)) throw Error(ErrorCode::kInvalidConfig, "energy parameters must be positive");
  }
  if (kappa > 1.0) throw Error(ErrorCode::kInvalidConfig, "PA efficiency kappa must be <= 1");
  if (rb_hz > bandwidth_hz) throw Error(ErrorCode::kInvalidConfig, "resource block wider than band");
}

namespace {

double adc_interface(const EnergyParams& p) { return p.p_int_per_gbps * 2.0 * p.s_adc * p.b_adc; }
double dac_interface(const EnergyParams& p) { return p.p_int_per_gbps * 2.0 * p.s_dac * p.b_dac; }

}  // namespace

double interface_power(const EnergyParams& params) {
  return adc_interface(params) + dac_interface(params);
}

BasebandFlops baseband_flops(double n_coh, int eta_tr, int eta_dl, int m, int k) {
  const double mk = static_cast<double>(m) * k;
  BasebandFlops c;
  c.corr = 8.0 * n_coh * eta_tr * mk;
  c.data = n_coh * (4.0 * k * mk + 8.0 * eta_dl * mk);
  return c;
}

EnergyReport total_power(int m, int k, double loss_db, const FrameConfig& frame,
                         const EnergyParams& params, PowerAccounting accounting) {
  if (m < 1 || k < 1 || frame.eta_coh < 1) {
    throw Error(ErrorCode::kInvalidDimensions, "total_power needs m, k, eta_coh >= 1");
  }
  const double tr_duty = static_cast<double>(frame.eta_tr) / frame.eta_coh;
  const double dl_duty = static_cast<double>(frame.eta_dl) / frame.eta_coh;
  double p_t = dbm_to_watts(params.p_t_dbm);
  if (accounting == PowerAccounting::kResourceBlock) p_t *= params.rb_hz / params.bandwidth_hz;

  EnergyReport r;
  r.p_pa = p_t * db_to_linear(loss_db) / params.kappa * dl_duty;
  r.p_rf = m * params.p_cir + params.p_lo;
  r.p_conv = m * (params.p_adc * tr_duty + params.p_dac * dl_duty);
  r.p_int = m * (adc_interface(params) * tr_duty + dac_interface(params) * dl_duty);
  const BasebandFlops c = baseband_flops(params.n_coh, frame.eta_tr, frame.eta_dl, m, k);
  // p_c^{-1} is flops per mW.
  r.p_bb = c.total() / params.inv_pc_flops_per_mw * 1e-3;
  r.total = r.p_pa + r.p_rf + r.p_conv + r.p_int + r.p_bb;
  return r;
}

EnergyReport energy_efficiency(double rate_bits_per_s_per_hz, double bandwidth_for_rate,
                               EnergyReport power) {
  if (rate_bits_per_s_per_hz < 0.0 || !(power.total > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "energy efficiency needs rate >= 0 and power > 0");
  }
  power.r_sum_bps = rate_bits_per_s_per_hz * bandwidth_for_rate;
  power.xi = power.r_sum_bps / power.total;
  return power;
}

double rate_bandwidth(const EnergyParams& params, PowerAccounting accounting) {
  return accounting == PowerAccounting::kResourceBlock ? params.rb_hz : params.bandwidth_hz;
}

}  // namespace asel
