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

#ifndef ASEL_ANALYSIS_HPP_
#define ASEL_ANALYSIS_HPP_

#include <cstdint>
#include <vector>

#include "asel/connectivity.hpp"
#include "asel/rng.hpp"

namespace asel {

// Column norms |h_i|^2 of an i.i.d. Rayleigh channel with K users are
// Gamma(K, 1); B_{t:N} is the t-th smallest of N of them.
struct OrderStatSpec {
  int n = 1;
  int k = 1;
  // Scale of the substitution y = c (x + 1)^2 / 4 that maps [-1, 1] onto [0, c].
  double c = 100.0;
  int quadrature_nodes = 200;
};

// E[B_{t:N}] for 1 <= t <= N (t counted from the smallest).
double moment_ordered_norm(int t, const OrderStatSpec& spec);

// All N moments at once, indexed by t - 1. Cheaper than N separate calls.
std::vector<double> ordered_norm_moments(const OrderStatSpec& spec);

// One selectable combination of ranks (1 = strongest antenna) and how likely
// it is to be the selected one.
struct RankSet {
  std::vector<int> ranks;  // ascending
  double p = 0.0;
};

struct RankSetDistribution {
  std::vector<RankSet> sets;  // ascending lexicographic order of ranks
  bool exact = true;
  // Set when N exceeded the enumeration limit and sampling was used instead.
  bool enumeration_limit_exceeded = false;
  std::uint64_t samples = 0;  // Monte Carlo draws, 0 when exact
};

struct RankSetOptions {
  int enumeration_limit = 12;
  std::uint64_t monte_carlo_samples = 1000000;
  RngStreamSpec stream{};
};

// Distribution of the rank set picked by per-group power selection when the
// N norms are assigned to antennas by a uniformly random permutation.
RankSetDistribution rank_set_distribution(const ConnectivityMap& map,
                                          const RankSetOptions& options = {});

// Sampling estimate from random permutations; usable at any N.
RankSetDistribution rank_set_distribution_mc(const ConnectivityMap& map, std::uint64_t samples,
                                             const RngStreamSpec& stream);

struct PowerScaling {
  double value = 0.0;
  // Per rank set: its own scaling and probability (empty for FF).
  std::vector<double> per_set;
  std::vector<double> set_probability;
};

// (1 / KM) * sum of the M largest ordered-norm moments.
PowerScaling power_scaling_ff(int n, int m, const OrderStatSpec& spec);

// Probability-weighted per-set scalings for a partially connected map.
PowerScaling power_scaling_pc(const ConnectivityMap& map, const OrderStatSpec& spec,
                              const RankSetDistribution& dist);
PowerScaling power_scaling_pc(const ConnectivityMap& map, const OrderStatSpec& spec);

enum class ApproxMode { kSingle, kMixture };

struct ApproxResult {
  double mean = 0.0;
  double std_error = 0.0;
};

// E_G[log2 det(I + rho * P G G^H)] with G a K x M i.i.d. CN(0, 1) matrix,
// either for the single scaling ps.value or averaged over the per-set
// scalings. The expectation is a Monte Carlo over g_trials draws.
ApproxResult approx_capacity(const PowerScaling& ps, int k, int m, double rho, ApproxMode mode,
                             int g_trials = 5000, const RngStreamSpec& stream = {});

}  // namespace asel

#endif  // ASEL_ANALYSIS_HPP_
