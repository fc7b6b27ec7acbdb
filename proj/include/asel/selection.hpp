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

#ifndef ASEL_SELECTION_HPP_
#define ASEL_SELECTION_HPP_

#include <vector>

#include <Eigen/Dense>

#include "asel/channel.hpp"
#include "asel/connectivity.hpp"
#include "asel/rates.hpp"

namespace asel {

// Selected antennas, 0-based and sorted ascending.
struct SelectionMask {
  std::vector<int> selected;

  int size() const { return static_cast<int>(selected.size()); }
  // Binary diagonal of the selection matrix S.
  Eigen::VectorXd as_diagonal(int n) const;
};

// Columns of h listed in the mask, in mask order.
Eigen::MatrixXcd gather_columns(const Eigen::MatrixXcd& h, const SelectionMask& mask);

// True if the mask has exactly budgets[g] antennas in every group.
bool satisfies_budgets(const SelectionMask& mask, const ConnectivityMap& map);

// Indices of the M largest powers; lowest index wins ties.
SelectionMask select_power_ff(const Eigen::VectorXd& powers, int m);

// The budgets[g] largest powers within every antenna group.
SelectionMask select_power_pc(const Eigen::VectorXd& powers, const ConnectivityMap& map);

struct CsiSolverOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-6;
  bool polish = true;
};

struct CsiSelection {
  SelectionMask mask;
  bool converged = false;
  // The relaxed ascent hit max_iterations; the mask is the greedy one.
  bool fell_back_to_greedy = false;
  int iterations = 0;
  int polish_swaps = 0;
  Eigen::VectorXd relaxed;  // relaxed diagonal of S at termination
};

// Instantaneous-CSI selection: projected gradient ascent on the relaxed
// log det(I + rho H S H^H) over 0 <= S_ii <= 1 with per-group sums fixed,
// per-group top-budget rounding, then one greedy swap pass within groups.
// Pass fully_flexible_map(N, M) for an unconstrained fabric.
CsiSelection select_csi(const ChannelMatrix& h, const ConnectivityMap& map, double rho,
                        const CsiSolverOptions& options = {});

// Incremental greedy log-det selection honoring group budgets.
SelectionMask select_greedy(const ChannelMatrix& h, const ConnectivityMap& map, double rho);

// log2 det(I + rho H_M H_M^H), equal user power.
double selection_capacity_bits(const ChannelMatrix& h, const SelectionMask& mask, double rho);

struct WaterfillOptions {
  int max_iterations = 1000;
  double relative_tolerance = 1e-8;
};

// Maximizes log2 det(I + rho P H H^H) over diagonal P >= 0 with trace K by
// projected gradient ascent on the scaled simplex, starting from uniform P.
PowerAllocation waterfill_users(const Eigen::MatrixXcd& h_sel, double rho,
                                const WaterfillOptions& options = {});

}  // namespace asel

#endif  // ASEL_SELECTION_HPP_
