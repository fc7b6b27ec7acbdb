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

#include "asel/rates.hpp"

#include <cmath>

#include "asel/error.hpp"
#include "asel/linalg.hpp"

namespace asel {

namespace {
// ceil() of a product that should be an integer must not jump up because of
// binary rounding (0.7 * 100 and friends).
constexpr double kCeilSlack = 1e-9;
constexpr double kRankTolerance = 1e-12;
}  // namespace

int training_overhead(int n, int m, int k, CsiMode mode) {
  if (m < 1 || m > n) throw Error(ErrorCode::kInvalidDimensions, "need 1 <= M <= N");
  if (mode == CsiMode::kPowerBased || m == n) return k;
  return k * ((n + m - 1) / m);
}

FrameConfig frame_split(int eta_coh, int eta_tr, double dl_fraction) {
  if (eta_coh < 1 || eta_tr < 0 || !(dl_fraction > 0.0 && dl_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "frame needs eta_coh >= 1, eta_tr >= 0, 0 < dl_fraction <= 1");
  }
  FrameConfig frame;
  frame.eta_coh = eta_coh;
  frame.eta_tr = eta_tr;
  frame.dl_fraction = dl_fraction;
  if (eta_tr >= eta_coh) {
    frame.infeasible = true;
    frame.eta_tr = eta_coh;
    frame.eta_dl = 0;
    frame.eta_ul = 0;
    return frame;
  }
  const int remaining = eta_coh - eta_tr;
  const int dl = static_cast<int>(std::ceil(dl_fraction * remaining - kCeilSlack));
  frame.eta_dl = std::min(dl, remaining);
  frame.eta_ul = remaining - frame.eta_dl;
  return frame;
}

FrameConfig no_overhead_frame() { return frame_split(1, 0, 1.0); }

PowerAllocation uniform_allocation(int k) {
  PowerAllocation alloc;
  alloc.p = Eigen::VectorXd::Ones(k);
  return alloc;
}

RateSample sum_capacity(const Eigen::MatrixXcd& h_sel, const PowerAllocation& p,
                        double rho_eff, double prelog) {
  RateSample out;
  out.prelog = prelog;
  out.sum_rate = prelog * linalg::log_det_capacity(h_sel, p.p, rho_eff) / std::log(2.0);
  return out;
}

RateSample zf_sum_rate(const Eigen::MatrixXcd& h_sel, double rho_eff, double prelog) {
  RateSample out;
  out.prelog = prelog;
  if (h_sel.rows() > h_sel.cols()) {
    out.rank_deficient = true;
    return out;
  }
  const Eigen::MatrixXcd gram = h_sel * h_sel.adjoint();
  const double scale = gram.diagonal().real().maxCoeff();
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !(scale > 0.0) ||
      ldlt.vectorD().real().minCoeff() <= kRankTolerance * scale) {
    out.rank_deficient = true;
    return out;
  }
  const Eigen::MatrixXcd inv = ldlt.solve(Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()));
  double rate = 0.0;
  for (Eigen::Index k = 0; k < gram.rows(); ++k) {
    rate += std::log2(1.0 + rho_eff / inv(k, k).real());
  }
  out.sum_rate = prelog * rate;
  return out;
}

}  // namespace asel
