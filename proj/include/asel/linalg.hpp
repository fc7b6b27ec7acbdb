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

#ifndef ASEL_LINALG_HPP_
#define ASEL_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

// Small numeric kernels shared by the selection and rate code.
namespace asel::linalg {

// ln det of a Hermitian positive-definite matrix; -inf if the Cholesky
// factorization fails.
inline double log_det_hpd(const Eigen::MatrixXcd& a) {
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < a.rows(); ++i) sum += std::log(l(i, i).real());
  return 2.0 * sum;
}

// ln det(I + rho * P^{1/2} H H^H P^{1/2}) for diagonal P = diag(p).
inline double log_det_capacity(const Eigen::MatrixXcd& h, const Eigen::VectorXd& p, double rho) {
  const Eigen::VectorXd root = p.cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd scaled = root.asDiagonal() * h;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(h.rows(), h.rows());
  a.noalias() += rho * scaled * scaled.adjoint();
  return log_det_hpd(a);
}

// I + rho * H diag(s) H^H.
inline Eigen::MatrixXcd weighted_gram(const Eigen::MatrixXcd& h, const Eigen::VectorXd& s, double rho) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(h.rows(), h.rows());
  a.noalias() += rho * h * s.asDiagonal() * h.adjoint();
  return a;
}

// Euclidean projection of v onto {x : lo <= x_i <= hi, sum x = total}
// restricted to the given index set, written back into `out`.
inline void project_capped_simplex(const Eigen::VectorXd& v, const std::vector<int>& idx,
                                   double total, double hi, Eigen::VectorXd& out) {
  double lo_tau = std::numeric_limits<double>::infinity();
  double hi_tau = -std::numeric_limits<double>::infinity();
  for (int i : idx) {
    lo_tau = std::min(lo_tau, v(i) - hi);
    hi_tau = std::max(hi_tau, v(i));
  }
  auto mass = [&](double tau) {
    double s = 0.0;
    for (int i : idx) s += std::clamp(v(i) - tau, 0.0, hi);
    return s;
  };
  // mass(lo_tau) = |idx| * hi >= total and mass(hi_tau) = 0 <= total.
  for (int it = 0; it < 100 && hi_tau - lo_tau > 1e-15 * (1.0 + std::abs(hi_tau)); ++it) {
    const double mid = 0.5 * (lo_tau + hi_tau);
    if (mass(mid) > total) {
      lo_tau = mid;
    } else {
      hi_tau = mid;
    }
  }
  const double tau = 0.5 * (lo_tau + hi_tau);
  for (int i : idx) out(i) = std::clamp(v(i) - tau, 0.0, hi);
}

}  // namespace asel::linalg

#endif  // ASEL_LINALG_HPP_
