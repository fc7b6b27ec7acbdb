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

#ifndef ASEL_EXPERIMENTS_HPP_
#define ASEL_EXPERIMENTS_HPP_

#include <functional>
#include <string>

#include "asel/connectivity.hpp"
#include "asel/result_table.hpp"
#include "asel/scenario.hpp"

namespace asel {

// Worker count: the ASEL_THREADS environment variable if set and positive,
// otherwise the hardware concurrency.
int worker_threads();

// Runs body(i) for i in [0, count) on `threads` workers (0 = worker_threads()).
// body must not throw.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

// Everything about one series at one sweep value that does not depend on
// the channel draw.
struct PointPlan {
  ScenarioConfig scenario;
  FabricDesign fabric;        // zero-loss placeholder for full MIMO
  double loss_db = 0.0;       // fabric loss, 0 for full MIMO
  ConnectivityMap map;        // constraint map handed to the selector
  FrameConfig frame;
  double rho_eff = 1.0;       // linear SNR seen by the users
};

PointPlan plan_point(const ScenarioConfig& scenario, const SwitchCatalog& catalog);

struct TrialFlags {
  bool csi_fallback = false;
  bool rank_deficient = false;
};

// Sum rate without prelog for one channel draw. h has the deployed antennas
// of the widest series; full MIMO uses its first M columns.
double trial_rate(const PointPlan& plan, const ChannelMatrix& h, const Eigen::VectorXd& powers,
                  TrialFlags& flags);

struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  int failures = 0;
  double prelog = 1.0;
  double loss_db = 0.0;
  int csi_fallbacks = 0;
  int rank_deficient = 0;
  bool infeasible_frame = false;
};

// Monte Carlo ergodic rate at one operating point, prelog applied.
// Throws too-many-failures when more than 1% of the trials fail.
RateEstimate ergodic_rate(const ScenarioConfig& scenario,
                          const SwitchCatalog& catalog = SwitchCatalog::Default(),
                          int threads = 0);

// Evaluates every series at every sweep value; all Monte Carlo series of a
// sweep value share the same channel draws. Failures at one point are
// recorded in its rows and the sweep continues.
ResultTable run_sweep(const SweepConfig& config, int threads = 0);

}  // namespace asel

#endif  // ASEL_EXPERIMENTS_HPP_
