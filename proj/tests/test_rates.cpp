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

#include <doctest.h>

#include "asel/channel.hpp"
#include "asel/error.hpp"
#include "asel/rates.hpp"
#include "asel/selection.hpp"

using namespace asel;

TEST_CASE("training symbols per coherence block") {
  CHECK(training_overhead(128, 16, 16, CsiMode::kInstantaneous) == 128);
  CHECK(training_overhead(128, 16, 16, CsiMode::kPowerBased) == 16);
  CHECK(training_overhead(128, 128, 16, CsiMode::kInstantaneous) == 16);
  CHECK(training_overhead(128, 63, 16, CsiMode::kInstantaneous) == 48);
  CHECK(training_overhead(128, 64, 16, CsiMode::kInstantaneous) == 32);
}

TEST_CASE("downlink share of the coherence block") {
  const FrameConfig a = frame_split(200, 16, 0.7);
  CHECK(a.eta_dl == 129);  // ceil(0.7 * 184)
  CHECK(a.eta_ul == 184 - 129);
  CHECK(a.eta_dl + a.eta_ul + a.eta_tr == a.eta_coh);
  CHECK(frame_split(200, 128, 0.7).eta_dl == 51);  // ceil(0.7 * 72)
  CHECK(frame_split(200, 0, 1.0).prelog() == 1.0);
  CHECK(no_overhead_frame().prelog() == 1.0);
  // 0.7 * 10 is 7.000000000000001 in binary; the ceiling must still be 7.
  CHECK(frame_split(20, 10, 0.7).eta_dl == 7);

  const FrameConfig bad = frame_split(100, 128, 0.7);
  CHECK(bad.infeasible);
  CHECK(bad.eta_dl == 0);
  CHECK(bad.prelog() == 0.0);
  CHECK_THROWS_AS(frame_split(100, 10, 0.0), Error);
  CHECK_THROWS_AS(frame_split(100, 10, 1.5), Error);
}

TEST_CASE("sum capacity closed forms") {
  Eigen::MatrixXcd h(1, 1);
  h << 1.0;
  CHECK(sum_capacity(h, uniform_allocation(1), 1.0, 1.0).sum_rate == doctest::Approx(1.0));
  CHECK(sum_capacity(Eigen::MatrixXcd::Zero(2, 3), uniform_allocation(2), 10.0, 1.0).sum_rate ==
        doctest::Approx(0.0));
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
  CHECK(sum_capacity(eye, uniform_allocation(2), 10.0, 1.0).sum_rate ==
        doctest::Approx(2.0 * std::log2(11.0)).epsilon(1e-12));
  CHECK(sum_capacity(eye, uniform_allocation(2), 10.0, 0.5).sum_rate ==
        doctest::Approx(std::log2(11.0)).epsilon(1e-12));
}

TEST_CASE("zero forcing closed forms") {
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(zf_sum_rate(eye, 4.0, 1.0).sum_rate == doctest::Approx(3.0 * std::log2(5.0)));
  // One user: ZF reduces to matched filtering.
  const ChannelMatrix h = draw_channel(1, 6, CovarianceSpec::Identity(), RngStreamSpec{9}, 0);
  CHECK(zf_sum_rate(h.h, 3.0, 1.0).sum_rate ==
        doctest::Approx(sum_capacity(h.h, uniform_allocation(1), 3.0, 1.0).sum_rate).epsilon(1e-12));
}

TEST_CASE("zero forcing matches an explicit pseudoinverse precoder") {
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd h =
        draw_channel(2, 4, CovarianceSpec::Identity(), RngStreamSpec{11}, t).h;
    const double rho = 5.0;
    // Unit-norm columns of the right pseudoinverse, each user at power rho.
    Eigen::MatrixXcd w = h.completeOrthogonalDecomposition().pseudoInverse();
    for (Eigen::Index j = 0; j < w.cols(); ++j) w.col(j).normalize();
    const Eigen::MatrixXcd g = h * w;
    double oracle = 0.0;
    for (Eigen::Index k = 0; k < 2; ++k) {
      double interference = 0.0;
      for (Eigen::Index j = 0; j < 2; ++j) {
        if (j != k) interference += rho * std::norm(g(k, j));
      }
      oracle += std::log2(1.0 + rho * std::norm(g(k, k)) / (1.0 + interference));
    }
    CHECK(zf_sum_rate(h, rho, 1.0).sum_rate == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("rank-deficient channels are flagged with rate 0") {
  Eigen::MatrixXcd h(2, 3);
  h << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0;
  const RateSample r = zf_sum_rate(h, 10.0, 1.0);
  CHECK(r.rank_deficient);
  CHECK(r.sum_rate == 0.0);
  // More users than selected antennas.
  const RateSample wide = zf_sum_rate(Eigen::MatrixXcd::Identity(3, 2), 10.0, 1.0);
  CHECK(wide.rank_deficient);
}

TEST_CASE("per-realization orderings of DPC, waterfilling and ZF") {
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXcd h =
        draw_channel(4, 6, CovarianceSpec::Identity(), RngStreamSpec{5}, t).h;
    const double rho = 10.0;
    const double uniform = sum_capacity(h, uniform_allocation(4), rho, 1.0).sum_rate;
    const PowerAllocation wf = waterfill_users(h, rho);
    CHECK(wf.p.sum() == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(wf.p.minCoeff() >= 0.0);
    CHECK(sum_capacity(h, wf, rho, 1.0).sum_rate >= uniform - 1e-12);
    CHECK(zf_sum_rate(h, rho, 1.0).sum_rate <= uniform + 1e-12);
  }
}
