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

#include "asel/connectivity.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "asel/error.hpp"

namespace asel {

namespace {

// {start, start + stride, ...} up to and including `last` (1-based).
std::vector<int> strided(int start, int stride, int last) {
  std::vector<int> out;
  for (int v = start; v <= last; v += stride) out.push_back(v - 1);
  return out;
}

void check_partition(const std::vector<std::vector<int>>& groups, int size,
                     const char* what) {
  std::vector<int> seen(size, 0);
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::kInconsistentMap, std::string("empty ") + what + " group");
    for (int v : g) {
      if (v < 0 || v >= size || seen[v]++) {
        throw Error(ErrorCode::kInconsistentMap, std::string(what) + " groups do not partition");
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::kInconsistentMap, std::string(what) + " groups do not cover all indices");
  }
}

}  // namespace

std::vector<int> ConnectivityMap::group_of_antenna() const {
  std::vector<int> owner(n_antennas, -1);
  for (int g = 0; g < num_groups(); ++g) {
    for (int a : antenna_groups[g]) owner[a] = g;
  }
  return owner;
}

std::string ConnectivityMap::to_json() const {
  auto one_based = [](const std::vector<std::vector<int>>& groups) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& g : groups) {
      nlohmann::json row = nlohmann::json::array();
      for (int v : g) row.push_back(v + 1);
      out.push_back(row);
    }
    return out;
  };
  nlohmann::json doc;
  doc["n"] = n_antennas;
  doc["m"] = n_chains;
  doc["s_cons"] = s_cons;
  doc["degenerate"] = degenerate;
  doc["groups"] = one_based(antenna_groups);
  doc["chains"] = one_based(chain_groups);
  doc["budgets"] = budgets;
  return doc.dump();
}

ConnectivityMap fully_flexible_map(int n, int m) {
  if (m < 1 || n < 1 || m > n) {
    throw Error(ErrorCode::kInvalidDimensions, "need 1 <= M <= N");
  }
  ConnectivityMap map;
  map.n_antennas = n;
  map.n_chains = m;
  map.s_cons = 1;
  map.antenna_groups.push_back(strided(1, 1, n));
  map.chain_groups.push_back(strided(1, 1, m));
  map.budgets.push_back(m);
  map.degenerate = (n == m);
  return map;
}

ConnectivityMap build_connectivity(int n, int m) {
  if (m < 1 || n < 1 || m > n) {
    throw Error(ErrorCode::kInvalidDimensions,
                "need 1 <= M <= N, got N=" + std::to_string(n) + " M=" + std::to_string(m));
  }
  if (m == n) return fully_flexible_map(n, m);

  ConnectivityMap map;
  map.n_antennas = n;
  map.n_chains = m;
  const bool single_chain_per_antenna = n / m >= 2;
  const int overlap = std::max(0, 2 * m - n);
  map.s_cons = m - overlap;
  map.n_dist = single_chain_per_antenna ? m : n - m;
  map.m_dist = single_chain_per_antenna ? 1 : n - m;

  for (int i = 1; i <= map.s_cons; ++i) {
    map.antenna_groups.push_back(strided(i, map.n_dist, n));
    // Each antenna reaches one chain when T_AN = 1, so chain groups are
    // singletons; otherwise chains interleave with stride M_dist.
    map.chain_groups.push_back(single_chain_per_antenna ? std::vector<int>{i - 1}
                                                        : strided(i, map.m_dist, m));
    map.budgets.push_back(static_cast<int>(map.chain_groups.back().size()));
  }
  validate(map);
  return map;
}

void validate(const ConnectivityMap& map) {
  const int groups = map.num_groups();
  if (groups < 1 || static_cast<int>(map.chain_groups.size()) != groups ||
      static_cast<int>(map.budgets.size()) != groups) {
    throw Error(ErrorCode::kInconsistentMap, "group vectors disagree in length");
  }
  check_partition(map.antenna_groups, map.n_antennas, "antenna");
  check_partition(map.chain_groups, map.n_chains, "chain");
  for (int g = 0; g < groups; ++g) {
    if (map.budgets[g] != static_cast<int>(map.chain_groups[g].size()) ||
        map.budgets[g] > static_cast<int>(map.antenna_groups[g].size())) {
      throw Error(ErrorCode::kInconsistentMap, "budget of group " + std::to_string(g + 1));
    }
  }
  if (std::accumulate(map.budgets.begin(), map.budgets.end(), 0) != map.n_chains) {
    throw Error(ErrorCode::kInconsistentMap, "budgets do not sum to M");
  }
}

}  // namespace asel
