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

#ifndef ASEL_CHANNEL_HPP_
#define ASEL_CHANNEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "asel/rng.hpp"

namespace asel {

// Either uncorrelated Rayleigh (identity) or an explicit K x K Hermitian PSD
// user covariance. The square root is computed once at construction.
class CovarianceSpec {
 public:
  static CovarianceSpec Identity() { return CovarianceSpec(); }

  // Throws non-psd-covariance if R is not Hermitian or has an eigenvalue
  // below -1e-10; smaller negative eigenvalues are clamped to zero.
  static CovarianceSpec FromMatrix(const Eigen::MatrixXcd& r);

  bool is_identity() const { return !sqrt_.has_value(); }
  // Only valid when !is_identity().
  const Eigen::MatrixXcd& sqrt() const { return *sqrt_; }
  int dimension() const { return is_identity() ? 0 : static_cast<int>(sqrt_->rows()); }

 private:
  CovarianceSpec() = default;
  std::optional<Eigen::MatrixXcd> sqrt_;
};

// K x N channel realization; column i is antenna i.
struct ChannelMatrix {
  Eigen::MatrixXcd h;

  int k_users() const { return static_cast<int>(h.rows()); }
  int n_antennas() const { return static_cast<int>(h.cols()); }
};

// i.i.d. CN(0, 1) entries, generated as (x + iy) / sqrt(2).
Eigen::MatrixXcd draw_iid_gaussian(int rows, int cols, std::mt19937_64& rng);

// H = R^{1/2} F with F i.i.d. CN(0, 1). Bit-identical for equal
// (stream.master_seed, trial).
ChannelMatrix draw_channel(int k, int n, const CovarianceSpec& cov,
                           const RngStreamSpec& stream, std::uint64_t trial);

// Squared norm of every column.
Eigen::VectorXd column_powers(const ChannelMatrix& h);

// Row-major dump, one matrix row per line, "re,im" pairs separated by commas.
void write_csv(const ChannelMatrix& h, std::ostream& out);

}  // namespace asel

#endif  // ASEL_CHANNEL_HPP_
