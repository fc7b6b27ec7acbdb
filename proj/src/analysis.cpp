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

#include "asel/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "asel/channel.hpp"
#include "asel/error.hpp"
#include "asel/quadrature.hpp"

namespace asel {
namespace {

// Hard ceiling for exact enumeration: completion counts must fit in 64 bits.
constexpr int kMaxExactN = 20;

const GaussJacobiRule& cached_rule(int nodes) {
  static std::mutex mu;
  static std::map<int, GaussJacobiRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(nodes);
  if (it == cache.end()) it = cache.emplace(nodes, gauss_jacobi(nodes, 0.0, 1.0)).first;
  return it->second;
}

void check_spec(const OrderStatSpec& spec) {
  if (spec.n < 1 || spec.k < 1 || !(spec.c > 0.0) || spec.quadrature_nodes < 16) {
    throw Error(ErrorCode::kInvalidConfig,
                "order statistic spec needs n, k >= 1, c > 0 and at least 16 nodes");
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * static_cast<std::uint64_t>(n - i) / (i + 1);
  return c;
}

struct Enumerator {
  std::vector<int> sizes;
  std::vector<int> budgets;
  std::vector<int> counts;
  int n = 0;
  int m = 0;
  std::map<std::uint64_t, std::uint64_t> tally;

  // Number of ways to hand the remaining ranks to the remaining slots.
  std::uint64_t completions(int remaining) const {
    std::uint64_t ways = 1;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
      const int cap = sizes[g] - counts[g];
      ways *= binomial(remaining, cap);
      remaining -= cap;
    }
    return ways;
  }

  void visit(int rank, std::uint64_t mask, int selected) {
    if (selected == m) {
      tally[mask] += completions(n - rank);
      return;
    }
    for (std::size_t g = 0; g < sizes.size(); ++g) {
      if (counts[g] == sizes[g]) continue;
      ++counts[g];
      const bool take = counts[g] <= budgets[g];
      visit(rank + 1, take ? (mask | (std::uint64_t{1} << rank)) : mask, selected + take);
      --counts[g];
    }
  }
};

std::vector<int> mask_to_ranks(std::uint64_t mask) {
  std::vector<int> ranks;
  for (int r = 0; r < 64; ++r) {
    if (mask & (std::uint64_t{1} << r)) ranks.push_back(r + 1);
  }
  return ranks;
}

RankSetDistribution from_tally(const std::map<std::uint64_t, std::uint64_t>& tally,
                               std::uint64_t total) {
  RankSetDistribution dist;
  for (const auto& [mask, count] : tally) {
    dist.sets.push_back({mask_to_ranks(mask),
                         static_cast<double>(count) / static_cast<double>(total)});
  }
  std::sort(dist.sets.begin(), dist.sets.end(),
            [](const RankSet& a, const RankSet& b) { return a.ranks < b.ranks; });
  return dist;
}

}  // namespace

std::vector<double> ordered_norm_moments(const OrderStatSpec& spec) {
  check_spec(spec);
  const GaussJacobiRule& rule = cached_rule(spec.quadrature_nodes);
  const int n = spec.n;
  const double k = spec.k;

  // Per node: log of the Gamma(K) cdf P, survival Q, and the t-independent
  // part of the integrand, K log y - y.
  const std::size_t nodes = rule.nodes.size();
  std::vector<double> log_p(nodes), log_q(nodes), log_base(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x1 = rule.nodes[i] + 1.0;
    const double y = spec.c * x1 * x1 / 4.0;
    log_p[i] = std::log(boost::math::gamma_p(k, y));
    log_q[i] = std::log(boost::math::gamma_q(k, y));
    log_base[i] = k * std::log(y) - y;
  }

  std::vector<double> moments(n);
  for (int t = 1; t <= n; ++t) {
    const double log_pref = std::log(spec.c / 2.0) + std::lgamma(n + 1.0) - std::lgamma(k) -
                            std::lgamma(static_cast<double>(t)) -
                            std::lgamma(static_cast<double>(n - t + 1));
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      double lf = log_base[i] + log_pref;
      // A zero exponent contributes a factor 1 even where the log is -inf.
      if (t > 1) lf += (t - 1) * log_p[i];
      if (n > t) lf += (n - t) * log_q[i];
      if (lf > -std::numeric_limits<double>::infinity()) sum += rule.weights[i] * std::exp(lf);
    }
    if (!std::isfinite(sum)) {
      throw Error(ErrorCode::kNumericOverflow, "ordered-norm moment is not finite");
    }
    moments[t - 1] = sum;
  }
  return moments;
}

double moment_ordered_norm(int t, const OrderStatSpec& spec) {
  if (t < 1 || t > spec.n) {
    throw Error(ErrorCode::kInvalidDimensions, "order statistic index out of range");
  }
  return ordered_norm_moments(spec)[t - 1];
}

RankSetDistribution rank_set_distribution(const ConnectivityMap& map,
                                          const RankSetOptions& options) {
  const int limit = std::min(options.enumeration_limit, kMaxExactN);
  if (map.n_antennas > limit) {
    RankSetDistribution dist =
        rank_set_distribution_mc(map, options.monte_carlo_samples, options.stream);
    dist.enumeration_limit_exceeded = true;
    return dist;
  }
  Enumerator e;
  e.n = map.n_antennas;
  e.m = map.n_chains;
  for (int g = 0; g < map.num_groups(); ++g) {
    e.sizes.push_back(static_cast<int>(map.antenna_groups[g].size()));
    e.budgets.push_back(map.budgets[g]);
  }
  e.counts.assign(e.sizes.size(), 0);
  e.visit(0, 0, 0);

  // Equally likely assignments of ranks to groups: N! / prod(size_g!).
  std::uint64_t total = 1;
  int remaining = e.n;
  for (int s : e.sizes) {
    total *= binomial(remaining, s);
    remaining -= s;
  }
  return from_tally(e.tally, total);
}

RankSetDistribution rank_set_distribution_mc(const ConnectivityMap& map, std::uint64_t samples,
                                             const RngStreamSpec& stream) {
  const int n = map.n_antennas;
  if (n > 64) throw Error(ErrorCode::kInvalidDimensions, "rank sets are limited to N <= 64");
  if (samples == 0) throw Error(ErrorCode::kInvalidConfig, "Monte Carlo needs samples >= 1");
  std::mt19937_64 rng = stream.substream(StreamTag::kRankPermutation, 0);
  std::vector<int> rank_of(n);  // 0-based rank held by each antenna
  std::iota(rank_of.begin(), rank_of.end(), 0);
  std::vector<int> buf;
  std::map<std::uint64_t, std::uint64_t> tally;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::shuffle(rank_of.begin(), rank_of.end(), rng);
    std::uint64_t mask = 0;
    for (int g = 0; g < map.num_groups(); ++g) {
      buf.clear();
      for (int a : map.antenna_groups[g]) buf.push_back(rank_of[a]);
      const int b = map.budgets[g];
      std::partial_sort(buf.begin(), buf.begin() + b, buf.end());
      for (int i = 0; i < b; ++i) mask |= std::uint64_t{1} << buf[i];
    }
    ++tally[mask];
  }
  RankSetDistribution dist = from_tally(tally, samples);
  dist.exact = false;
  dist.samples = samples;
  return dist;
}

PowerScaling power_scaling_ff(int n, int m, const OrderStatSpec& spec) {
  if (m < 1 || m > n || spec.n != n) {
    throw Error(ErrorCode::kInvalidDimensions, "power scaling needs 1 <= M <= N = spec.n");
  }
  const std::vector<double> mom = ordered_norm_moments(spec);
  double sum = 0.0;
  for (int i = 1; i <= m; ++i) sum += mom[n - i];
  PowerScaling ps;
  ps.value = sum / (static_cast<double>(spec.k) * m);
  return ps;
}

PowerScaling power_scaling_pc(const ConnectivityMap& map, const OrderStatSpec& spec,
                              const RankSetDistribution& dist) {
  const int n = map.n_antennas;
  const int m = map.n_chains;
  if (spec.n != n) throw Error(ErrorCode::kInvalidDimensions, "spec.n must equal map N");
  const std::vector<double> mom = ordered_norm_moments(spec);
  PowerScaling ps;
  for (const RankSet& set : dist.sets) {
    double sum = 0.0;
    for (int r : set.ranks) sum += mom[n - r];
    const double p_hat = sum / (static_cast<double>(spec.k) * m);
    ps.per_set.push_back(p_hat);
    ps.set_probability.push_back(set.p);
    ps.value += set.p * p_hat;
  }
  return ps;
}

PowerScaling power_scaling_pc(const ConnectivityMap& map, const OrderStatSpec& spec) {
  return power_scaling_pc(map, spec, rank_set_distribution(map));
}

ApproxResult approx_capacity(const PowerScaling& ps, int k, int m, double rho, ApproxMode mode,
                             int g_trials, const RngStreamSpec& stream) {
  if (k < 1 || m < 1 || !(rho > 0.0) || g_trials < 1) {
    throw Error(ErrorCode::kInvalidConfig, "approx_capacity needs k, m, g_trials >= 1, rho > 0");
  }
  std::vector<double> scales{ps.value};
  std::vector<double> weights{1.0};
  if (mode == ApproxMode::kMixture && !ps.per_set.empty()) {
    scales = ps.per_set;
    weights = ps.set_probability;
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
  for (int i = 0; i < g_trials; ++i) {
    std::mt19937_64 rng = stream.substream(StreamTag::kGaussianGain, static_cast<std::uint64_t>(i));
    const Eigen::MatrixXcd g = draw_iid_gaussian(k, m, rng);
    const Eigen::MatrixXcd gram = (k <= m) ? Eigen::MatrixXcd(g * g.adjoint())
                                           : Eigen::MatrixXcd(g.adjoint() * g);
    eig.compute(gram, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
    double value = 0.0;
    for (std::size_t j = 0; j < scales.size(); ++j) {
      double bits = 0.0;
      for (Eigen::Index q = 0; q < lambda.size(); ++q) bits += std::log2(1.0 + rho * scales[j] * lambda(q));
      value += weights[j] * bits;
    }
    sum += value;
    sum_sq += value * value;
  }
  ApproxResult out;
  out.mean = sum / g_trials;
  if (g_trials > 1) {
    const double var = std::max(0.0, (sum_sq - g_trials * out.mean * out.mean) / (g_trials - 1));
    out.std_error = std::sqrt(var / g_trials);
  }
  return out;
}

}  // namespace asel
