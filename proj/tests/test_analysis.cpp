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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <doctest.h>

#include "asel/analysis.hpp"
#include "asel/connectivity.hpp"
#include "asel/quadrature.hpp"

using namespace asel;

namespace {

// Sorted-sample estimate of every E[B_{t:N}] for Gamma(K, 1) norms.
std::vector<double> monte_carlo_moments(int n, int k, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(k, 1.0);
  std::vector<double> acc(n, 0.0), draw(n);
  for (int s = 0; s < samples; ++s) {
    for (double& x : draw) x = gamma(rng);
    std::sort(draw.begin(), draw.end());
    for (int t = 0; t < n; ++t) acc[t] += draw[t];
  }
  for (double& a : acc) a /= samples;
  return acc;
}

double prob_of(const RankSetDistribution& d, std::vector<int> ranks) {
  for (const auto& s : d.sets) {
    if (s.ranks == ranks) return s.p;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("Gauss-Jacobi rule integrates polynomials exactly") {
  const GaussJacobiRule r = gauss_jacobi(20, 0.0, 1.0);
  double w = 0.0, x2 = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    w += r.weights[i];
    x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
  }
  CHECK(w == doctest::Approx(2.0).epsilon(1e-13));  // integral of (1 + x)
  CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));  // integral of x^2 (1 + x)
  const GaussJacobiRule legendre = gauss_jacobi(5, 0.0, 0.0);
  double x4 = 0.0;
  for (std::size_t i = 0; i < legendre.nodes.size(); ++i) {
    x4 += legendre.weights[i] * std::pow(legendre.nodes[i], 4);
  }
  CHECK(x4 == doctest::Approx(0.4).epsilon(1e-13));
}

TEST_CASE("single-sample order statistics are Gamma means") {
  CHECK(std::abs(moment_ordered_norm(1, {1, 1}) - 1.0) < 1e-4);
  CHECK(std::abs(moment_ordered_norm(1, {1, 8}) - 8.0) < 1e-3);
  // Maximum of N unit exponentials: harmonic number H_N.
  CHECK(moment_ordered_norm(8, {8, 1}) == doctest::Approx(761.0 / 280.0).epsilon(1e-9));
}

TEST_CASE("maximum of eight Gamma(2) norms against sampling") {
  const auto mc = monte_carlo_moments(8, 2, 1000000, 99);
  CHECK(moment_ordered_norm(8, {8, 2}) == doctest::Approx(mc[7]).epsilon(0.005));
}

TEST_CASE("moments add up to N K and converge in the node count") {
  for (int n : {1, 2, 5, 8, 16}) {
    for (int k : {1, 2, 4, 8, 16}) {
      CAPTURE(n);
      CAPTURE(k);
      const auto m = ordered_norm_moments({n, k});
      double sum = 0.0;
      for (double v : m) sum += v;
      CHECK(sum == doctest::Approx(static_cast<double>(n) * k).epsilon(1e-3));
      const auto fine = ordered_norm_moments({n, k, 100.0, 400});
      for (int t = 0; t < n; ++t) CHECK(std::abs(fine[t] / m[t] - 1.0) < 1e-6);
      for (int t = 1; t < n; ++t) CHECK(m[t] > m[t - 1]);
    }
  }
}

TEST_CASE("fully flexible power scaling") {
  CHECK(power_scaling_ff(8, 8, {8, 2}).value == doctest::Approx(1.0).epsilon(1e-3));
  const auto mc = monte_carlo_moments(8, 2, 400000, 5);
  CHECK(power_scaling_ff(8, 1, {8, 2}).value == doctest::Approx(mc[7] / 2.0).epsilon(0.005));
  double prev = 1e300;
  for (int m = 1; m <= 16; ++m) {
    const double v = power_scaling_ff(16, m, {16, 4}).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("rank sets of the five-antenna, two-chain map") {
  const RankSetDistribution d = rank_set_distribution(build_connectivity(5, 2));
  CHECK(d.exact);
  REQUIRE(d.sets.size() == 3);
  CHECK(prob_of(d, {1, 2}) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(prob_of(d, {1, 3}) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(prob_of(d, {1, 4}) == doctest::Approx(0.1).epsilon(1e-15));
  const RankSetDistribution full = rank_set_distribution(build_connectivity(6, 6));
  REQUIRE(full.sets.size() == 1);
  CHECK(full.sets[0].ranks == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(full.sets[0].p == 1.0);
}

TEST_CASE("exact rank-set probabilities are a distribution containing rank 1") {
  for (int n = 2; n <= 12; ++n) {
    for (int m = 1; m <= n; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      const RankSetDistribution d = rank_set_distribution(build_connectivity(n, m));
      double sum = 0.0;
      for (const auto& s : d.sets) {
        REQUIRE(s.p > 0.0);
        REQUIRE(static_cast<int>(s.ranks.size()) == m);
        REQUIRE(s.ranks.front() == 1);
        sum += s.p;
      }
      REQUIRE(std::abs(sum - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("exact and sampled rank sets agree for every map with N <= 10") {
  int compared = 0;
  for (int n = 2; n <= 10; ++n) {
    for (int m = 1; m < n; ++m) {
      const ConnectivityMap map = build_connectivity(n, m);
      const RankSetDistribution exact = rank_set_distribution(map);
      const std::uint64_t samples = 200000;
      const RankSetDistribution mc = rank_set_distribution_mc(map, samples, RngStreamSpec{31});
      CHECK_FALSE(mc.exact);
      for (const auto& s : mc.sets) CHECK(prob_of(exact, s.ranks) > 0.0);
      for (const auto& s : exact.sets) {
        const double sigma = std::sqrt(s.p * (1.0 - s.p) / samples);
        CAPTURE(n);
        CAPTURE(m);
        CHECK(std::abs(prob_of(mc, s.ranks) - s.p) <= 3.0 * sigma + 1e-12);
        ++compared;
      }
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("N=6, M=3 rank sets against a million permutations") {
  const ConnectivityMap map = build_connectivity(6, 3);
  const RankSetDistribution exact = rank_set_distribution(map);
  const RankSetDistribution mc = rank_set_distribution_mc(map, 1000000, RngStreamSpec{77});
  for (const auto& s : exact.sets) {
    const double sigma = std::sqrt(s.p * (1.0 - s.p) / 1e6);
    CHECK(std::abs(prob_of(mc, s.ranks) - s.p) <= 3.0 * sigma);
  }
}

TEST_CASE("maps beyond the enumeration limit are sampled and flagged") {
  RankSetOptions opts;
  opts.enumeration_limit = 12;
  opts.monte_carlo_samples = 20000;
  const RankSetDistribution d = rank_set_distribution(build_connectivity(14, 5), opts);
  CHECK_FALSE(d.exact);
  CHECK(d.enumeration_limit_exceeded);
  CHECK(d.samples == 20000);
  double sum = 0.0;
  for (const auto& s : d.sets) sum += s.p;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("partially connected power scaling") {
  const OrderStatSpec spec{5, 3};
  const auto mom = ordered_norm_moments(spec);
  // Ranks from the largest map to moments from the smallest: rank r -> t = N - r + 1.
  auto p_hat = [&](int a, int b) { return (mom[5 - a] + mom[5 - b]) / (3.0 * 2.0); };
  const PowerScaling ps = power_scaling_pc(build_connectivity(5, 2), spec);
  CHECK(ps.value == doctest::Approx(0.6 * p_hat(1, 2) + 0.3 * p_hat(1, 3) + 0.1 * p_hat(1, 4))
                        .epsilon(1e-12));
  REQUIRE(ps.per_set.size() == 3);
  CHECK(power_scaling_pc(build_connectivity(7, 7), {7, 2}).value ==
        doctest::Approx(power_scaling_ff(7, 7, {7, 2}).value).epsilon(1e-12));
  for (int n = 2; n <= 12; ++n) {
    for (int m = 1; m <= n; ++m) {
      CHECK(power_scaling_pc(build_connectivity(n, m), {n, 2}).value <=
            power_scaling_ff(n, m, {n, 2}).value + 1e-12);
    }
  }
}

TEST_CASE("approximate capacity") {
  PowerScaling zero;
  CHECK(approx_capacity(zero, 2, 4, 10.0, ApproxMode::kSingle, 100).mean == 0.0);
  // Scaling 1, K = M = 1: E[log2(1 + rho |g|^2)] with |g|^2 ~ Exp(1).
  PowerScaling one;
  one.value = 1.0;
  const ApproxResult r = approx_capacity(one, 1, 1, 10.0, ApproxMode::kSingle, 20000);
  // e^{1/rho} E1(1/rho) / ln 2 at rho = 10.
  CHECK(std::abs(r.mean - 2.9066) < 4.0 * r.std_error + 1e-3);
}

TEST_CASE("the mixture never exceeds the single-scaling approximation") {
  // log det is concave in the scaling, so averaging scalings inside beats
  // averaging capacities outside on every draw of G.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const int m = 1 + static_cast<int>(rng() % n);
    const int k = 1 + static_cast<int>(rng() % 4);
    const PowerScaling ps = power_scaling_pc(build_connectivity(n, m), {n, k});
    const double rho = std::pow(10.0, static_cast<double>(rng() % 30) / 10.0);
    const double single = approx_capacity(ps, k, m, rho, ApproxMode::kSingle, 200).mean;
    const double mixture = approx_capacity(ps, k, m, rho, ApproxMode::kMixture, 200).mean;
    CHECK(mixture <= single + 1e-12);
  }
}
