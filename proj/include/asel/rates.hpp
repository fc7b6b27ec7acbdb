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

#ifndef ASEL_RATES_HPP_
#define ASEL_RATES_HPP_

#include <vector>

#include <Eigen/Dense>

namespace asel {

enum class CsiMode { kInstantaneous, kPowerBased };

// Symbol budget of one coherence block.
struct FrameConfig {
  int eta_coh = 1;
  int eta_tr = 0;
  int eta_ul = 0;
  int eta_dl = 1;
  double dl_fraction = 1.0;
  // Training alone fills the block; nothing is left for downlink data.
  bool infeasible = false;

  double prelog() const {
    return eta_coh > 0 ? static_cast<double>(eta_dl) / eta_coh : 0.0;
  }
};

// Pilots per coherence block: K * ceil(N / M) with instantaneous CSI
// (multiplexed training), K with power-based selection or full MIMO.
int training_overhead(int n, int m, int k, CsiMode mode);

// eta_dl = ceil(dl_fraction * (eta_coh - eta_tr)), uplink takes the rest.
// An infeasible frame (eta_tr >= eta_coh) comes back flagged with eta_dl = 0.
FrameConfig frame_split(int eta_coh, int eta_tr, double dl_fraction);

// Prelog 1: no training or uplink overhead.
FrameConfig no_overhead_frame();

// Diagonal of the user power matrix P; sums to K.
struct PowerAllocation {
  Eigen::VectorXd p;
  // log2 det(I + rho P H H^H) at p.
  double objective_bits = 0.0;
  int iterations = 0;
};

struct RateSample {
  double sum_rate = 0.0;  // bits/s/Hz, prelog applied
  double prelog = 1.0;
  std::vector<int> mask;  // selected antennas, 0-based, sorted
  bool rank_deficient = false;
};

// prelog * log2 det(I_K + rho P H H^H), evaluated through a Cholesky
// factorization of the Hermitian form I + rho P^{1/2} H H^H P^{1/2}.
RateSample sum_capacity(const Eigen::MatrixXcd& h_sel, const PowerAllocation& p,
                        double rho_eff, double prelog);

// Zero forcing with equal per-user power: SNR_k = rho / [(H H^H)^{-1}]_{kk}.
// A Gram matrix that is not numerically invertible yields rate 0 and
// rank_deficient = true.
RateSample zf_sum_rate(const Eigen::MatrixXcd& h_sel, double rho_eff, double prelog);

PowerAllocation uniform_allocation(int k);

}  // namespace asel

#endif  // ASEL_RATES_HPP_
