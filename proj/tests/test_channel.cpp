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

#include <cmath>
#include <complex>
#include <sstream>

#include <doctest.h>

#include "asel/channel.hpp"
#include "asel/error.hpp"

using namespace asel;

TEST_CASE("channel draws are a pure function of seed and trial") {
  const RngStreamSpec s{42};
  const auto cov = CovarianceSpec::Identity();
  const ChannelMatrix a = draw_channel(3, 5, cov, s, 7);
  const ChannelMatrix b = draw_channel(3, 5, cov, s, 7);
  const ChannelMatrix c = draw_channel(3, 5, cov, s, 8);
  CHECK(a.h == b.h);
  CHECK(a.h != c.h);
  CHECK(a.k_users() == 3);
  CHECK(a.n_antennas() == 5);
  // Drawing other trials first changes nothing.
  (void)draw_channel(3, 5, cov, s, 100);
  CHECK(draw_channel(3, 5, cov, s, 7).h == a.h);
  CHECK(draw_channel(3, 5, cov, RngStreamSpec{43}, 7).h != a.h);
}

TEST_CASE("entries are unit-variance circular complex Gaussians") {
  const RngStreamSpec s{1};
  double sum_abs2 = 0.0, sum_re2 = 0.0, sum_im2 = 0.0, sum_reim = 0.0;
  std::complex<double> sum = 0.0;
  long count = 0;
  for (int t = 0; t < 2000; ++t) {
    const ChannelMatrix h = draw_channel(4, 16, CovarianceSpec::Identity(), s, t);
    for (Eigen::Index i = 0; i < h.h.size(); ++i) {
      const std::complex<double> z = h.h.data()[i];
      sum += z;
      sum_abs2 += std::norm(z);
      sum_re2 += z.real() * z.real();
      sum_im2 += z.imag() * z.imag();
      sum_reim += z.real() * z.imag();
      ++count;
    }
  }
  // 128000 samples: standard errors are about 0.003 for these moments.
  CHECK(std::abs(sum / static_cast<double>(count)) < 0.015);
  CHECK(sum_abs2 / count == doctest::Approx(1.0).epsilon(0.015));
  CHECK(sum_re2 / count == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sum_im2 / count == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(sum_reim / count) < 0.01);
}

TEST_CASE("correlated draws follow the requested covariance") {
  Eigen::MatrixXcd r(2, 2);
  r << 1.0, std::complex<double>(0.6, 0.2), std::complex<double>(0.6, -0.2), 1.0;
  const CovarianceSpec cov = CovarianceSpec::FromMatrix(r);
  CHECK((cov.sqrt() * cov.sqrt().adjoint() - r).norm() < 1e-12);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(2, 2);
  const int trials = 4000, n = 8;
  for (int t = 0; t < trials; ++t) {
    const ChannelMatrix h = draw_channel(2, n, cov, RngStreamSpec{3}, t);
    acc += h.h * h.h.adjoint();
  }
  acc /= static_cast<double>(trials * n);
  CHECK((acc - r).cwiseAbs().maxCoeff() < 0.03);
  CHECK_THROWS_AS(draw_channel(3, n, cov, RngStreamSpec{3}, 0), Error);
}

TEST_CASE("covariance validation") {
  Eigen::MatrixXcd not_hermitian(2, 2);
  not_hermitian << 1.0, 0.5, 0.1, 1.0;
  CHECK_THROWS_AS(CovarianceSpec::FromMatrix(not_hermitian), Error);
  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  try {
    CovarianceSpec::FromMatrix(indefinite);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonPsdCovariance);
  }
  // Rounding noise just below zero is clamped, not rejected.
  Eigen::MatrixXcd singular(2, 2);
  singular << 1.0, 1.0 - 1e-13, 1.0 - 1e-13, 1.0;
  CHECK_NOTHROW(CovarianceSpec::FromMatrix(singular));
}

TEST_CASE("column powers and CSV dump") {
  ChannelMatrix h{Eigen::MatrixXcd(2, 2)};
  h.h << std::complex<double>(1, 2), std::complex<double>(0, 1), std::complex<double>(3, 0),
      std::complex<double>(0.5, -0.5);
  const Eigen::VectorXd p = column_powers(h);
  CHECK(p(0) == doctest::Approx(14.0));
  CHECK(p(1) == doctest::Approx(1.5));
  std::ostringstream out;
  write_csv(h, out);
  CHECK(out.str() == "1,2,0,1\n3,0,0.5,-0.5\n");
}
