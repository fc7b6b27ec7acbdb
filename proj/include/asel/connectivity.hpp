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

#ifndef ASEL_CONNECTIVITY_HPP_
#define ASEL_CONNECTIVITY_HPP_

#include <string>
#include <vector>

namespace asel {

// Group structure of a partially connected fabric. Antenna group i and chain
// group i are wired together; any feasible selection activates exactly
// budgets[i] antennas of antenna_groups[i].
//
// Indices are 0-based in memory and 1-based in serialized form.
struct ConnectivityMap {
  int n_antennas = 0;
  int n_chains = 0;
  int s_cons = 0;
  int n_dist = 0;
  int m_dist = 0;
  std::vector<std::vector<int>> antenna_groups;
  std::vector<std::vector<int>> chain_groups;
  std::vector<int> budgets;
  // Set when M = N: one group holding everything, no constraint at all.
  bool degenerate = false;

  int num_groups() const { return static_cast<int>(antenna_groups.size()); }

  // Group index of every antenna.
  std::vector<int> group_of_antenna() const;

  // {"groups": [[antennas], ...], "chains": [[...], ...], "budgets": [...]}
  std::string to_json() const;
};

// Interleaved (non-adjacent) wiring. Throws invalid-dimensions unless
// 1 <= m <= n, and inconsistent-map if the constructed groups fail the
// partition or budget checks.
ConnectivityMap build_connectivity(int n, int m);

// A single unconstrained group: the fully flexible feasible set. Also the
// map returned for M = N.
ConnectivityMap fully_flexible_map(int n, int m);

// Throws inconsistent-map on any violated invariant.
void validate(const ConnectivityMap& map);

}  // namespace asel

#endif  // ASEL_CONNECTIVITY_HPP_
