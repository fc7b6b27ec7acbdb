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

#include "asel/channel.hpp"

#include <cmath>
#include <ostream>

#include "asel/error.hpp"

namespace asel {

namespace {
constexpr double kPsdTolerance = 1e-10;
}  // namespace

CovarianceSpec CovarianceSpec::FromMatrix(const Eigen::MatrixXcd& r) {
  if (r.rows() != r.cols() || r.rows() == 0) {
    throw Error(ErrorCode::kNonPsdCovariance, "covariance must be square and nonempty");
  }
  if ((r - r.adjoint()).norm() > 1e-9 * std::max(1.0, r.norm())) {
    throw Error(ErrorCode::kNonPsdCovariance, "covariance is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
  Eigen::VectorXd values = eig.eigenvalues();
  if (values.minCoeff() < -kPsdTolerance) {
    throw Error(ErrorCode::kNonPsdCovariance,
                "covariance eigenvalue " + std::to_string(values.minCoeff()));
  }
  values = values.cwiseMax(0.0).cwiseSqrt();
  CovarianceSpec spec;
  spec.sqrt_ = eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().adjoint();
  return spec;
}

Eigen::MatrixXcd draw_iid_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(0.5);
  Eigen::MatrixXcd out(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = {scale * re, scale * im};
    }
  }
  return out;
}

ChannelMatrix draw_channel(int k, int n, const CovarianceSpec& cov,
                           const RngStreamSpec& stream, std::uint64_t trial) {
  if (k < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidDimensions, "channel needs K, N >= 1");
  }
  if (!cov.is_identity() && cov.dimension() != k) {
    throw Error(ErrorCode::kInvalidDimensions, "covariance dimension differs from K");
  }
  auto rng = stream.substream(StreamTag::kChannel, trial);
  ChannelMatrix out{draw_iid_gaussian(k, n, rng)};
  if (!cov.is_identity()) out.h = cov.sqrt() * out.h;
  return out;
}

Eigen::VectorXd column_powers(const ChannelMatrix& h) {
  return h.h.colwise().squaredNorm().transpose();
}

void write_csv(const ChannelMatrix& h, std::ostream& out) {
  const auto old_precision = out.precision(17);
  for (int r = 0; r < h.k_users(); ++r) {
    for (int c = 0; c < h.n_antennas(); ++c) {
      if (c > 0) out << ',';
      out << h.h(r, c).real() << ',' << h.h(r, c).imag();
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace asel
