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

#include "asel/quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <boost/math/special_functions/jacobi.hpp>

#include "asel/error.hpp"

namespace asel {

GaussJacobiRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1 || !(alpha > -1.0) || !(beta > -1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "Gauss-Jacobi needs n >= 1 and alpha, beta > -1");
  }
  const double ab = alpha + beta;

  // Symmetric tridiagonal Jacobi matrix of the three-term recurrence.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double two_k = 2.0 * k + ab;
    diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0)
                       : (beta * beta - alpha * alpha) / (two_k * (two_k + 2.0));
    if (k >= 1) {
      const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
      const double den = two_k * two_k * (two_k + 1.0) * (two_k - 1.0);
      sub(k - 1) = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);

  // Gauss-Jacobi weight prefactor, in log space.
  const double log_pref = std::lgamma(n + alpha + 1.0) + std::lgamma(n + beta + 1.0) -
                          std::lgamma(n + ab + 1.0) - std::lgamma(n + 1.0) +
                          (ab + 1.0) * std::log(2.0);

  GaussJacobiRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const auto un = static_cast<unsigned>(n);
  for (int i = 0; i < n; ++i) {
    double x = eig.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const double p = boost::math::jacobi(un, alpha, beta, x);
      const double dp = boost::math::jacobi_prime(un, alpha, beta, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = boost::math::jacobi_prime(un, alpha, beta, x);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_pref) / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace asel
