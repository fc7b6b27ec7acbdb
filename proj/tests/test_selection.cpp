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
#include <complex>
#include <numeric>

#include <doctest.h>

#include "asel/channel.hpp"
#include "asel/connectivity.hpp"
#include "asel/selection.hpp"

using namespace asel;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// log2 det(I + rho H_S H_S^H) straight from a dense determinant.
double capacity_oracle(const Eigen::MatrixXcd& h, const std::vector<int>& cols, double rho) {
  Eigen::MatrixXcd hs(h.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) hs.col(j) = h.col(cols[j]);
  const Eigen::MatrixXcd a =
      Eigen::MatrixXcd::Identity(h.rows(), h.rows()) + rho * hs * hs.adjoint();
  return std::log2(std::abs(a.determinant()));
}

// Best capacity over all M-subsets of N columns accepted by `ok`.
template <typename Pred>
double exhaustive(const Eigen::MatrixXcd& h, int m, double rho, Pred ok) {
  const int n = static_cast<int>(h.cols());
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + m, 1);
  double best = -1.0;
  do {
    std::vector<int> cols;
    for (int i = 0; i < n; ++i) {
      if (pick[i]) cols.push_back(i);
    }
    if (ok(cols)) best = std::max(best, capacity_oracle(h, cols, rho));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST_CASE("power-based fully flexible selection") {
  const Eigen::VectorXd p = vec({0.9, 0.5, 0.8, 0.1, 0.7});
  CHECK(select_power_ff(p, 2).selected == std::vector<int>{0, 2});
  CHECK(select_power_ff(Eigen::VectorXd::Ones(5), 3).selected == std::vector<int>{0, 1, 2});
  CHECK(select_power_ff(p, 5).selected == std::vector<int>{0, 1, 2, 3, 4});
  const SelectionMask mask = select_power_ff(p, 2);
  CHECK(mask.as_diagonal(5) == vec({1, 0, 1, 0, 0}));
}

TEST_CASE("power-based partially connected selection") {
  const Eigen::VectorXd p = vec({0.9, 0.5, 0.8, 0.1, 0.7});
  CHECK(select_power_pc(p, build_connectivity(5, 2)).selected == std::vector<int>{0, 1});
  CHECK(select_power_pc(p, build_connectivity(5, 3)).selected == std::vector<int>{0, 1, 2});
}

TEST_CASE("partial selection agrees with full selection whenever the latter is feasible") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int compared = 0;
  for (int draw = 0; draw < 10000; ++draw) {
    const int n = 6 + draw % 7;
    const int m = 1 + draw % (n - 1);
    const ConnectivityMap map = build_connectivity(n, m);
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p(i) = u(rng);
    const SelectionMask ff = select_power_ff(p, m);
    const SelectionMask pc = select_power_pc(p, map);
    REQUIRE(pc.size() == m);
    REQUIRE(satisfies_budgets(pc, map));
    Eigen::Index top;
    p.maxCoeff(&top);
    REQUIRE(std::find(pc.selected.begin(), pc.selected.end(), static_cast<int>(top)) !=
            pc.selected.end());
    if (satisfies_budgets(ff, map)) {
      ++compared;
      REQUIRE(ff.selected == pc.selected);
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("single-user CSI selection reduces to power selection") {
  for (int t = 0; t < 50; ++t) {
    const ChannelMatrix h = draw_channel(1, 10, CovarianceSpec::Identity(), RngStreamSpec{2}, t);
    const Eigen::VectorXd p = column_powers(h);
    CHECK(select_csi(h, fully_flexible_map(10, 4), 3.0).mask.selected ==
          select_power_ff(p, 4).selected);
    const ConnectivityMap map = build_connectivity(10, 4);
    CHECK(select_csi(h, map, 3.0).mask.selected == select_power_pc(p, map).selected);
  }
}

TEST_CASE("CSI selection against exhaustive search on N=8, M=4, K=2") {
  const double rho = 10.0;
  const ConnectivityMap ff = fully_flexible_map(8, 4);
  const ConnectivityMap pc = build_connectivity(8, 4);
  double got_ff = 0.0, best_ff = 0.0, got_pc = 0.0, best_pc = 0.0;
  for (int t = 0; t < 200; ++t) {
    const ChannelMatrix h = draw_channel(2, 8, CovarianceSpec::Identity(), RngStreamSpec{21}, t);
    const CsiSelection a = select_csi(h, ff, rho);
    const CsiSelection b = select_csi(h, pc, rho);
    REQUIRE(a.mask.size() == 4);
    REQUIRE(satisfies_budgets(b.mask, pc));
    got_ff += capacity_oracle(h.h, a.mask.selected, rho);
    got_pc += capacity_oracle(h.h, b.mask.selected, rho);
    best_ff += exhaustive(h.h, 4, rho, [](const std::vector<int>&) { return true; });
    best_pc += exhaustive(h.h, 4, rho, [&](const std::vector<int>& cols) {
      return satisfies_budgets(SelectionMask{cols}, pc);
    });
    const double greedy = selection_capacity_bits(h, select_greedy(h, pc, rho), rho);
    CHECK(selection_capacity_bits(h, b.mask, rho) >= greedy - 1e-9);
    // The unconstrained optimum can only be better.
    CHECK(selection_capacity_bits(h, a.mask, rho) >= selection_capacity_bits(h, b.mask, rho) - 0.05);
  }
  CHECK(got_ff / best_ff >= 0.99);
  CHECK(got_pc / best_pc >= 0.97);
}

TEST_CASE("FF optimum dominates the PC optimum") {
  const double rho = 10.0;
  const ConnectivityMap pc = build_connectivity(8, 3);
  for (int t = 0; t < 30; ++t) {
    const ChannelMatrix h = draw_channel(2, 8, CovarianceSpec::Identity(), RngStreamSpec{4}, t);
    const double ff_best = exhaustive(h.h, 3, rho, [](const std::vector<int>&) { return true; });
    const double pc_best = exhaustive(h.h, 3, rho, [&](const std::vector<int>& cols) {
      return satisfies_budgets(SelectionMask{cols}, pc);
    });
    CHECK(ff_best >= pc_best - 1e-12);
  }
}

TEST_CASE("greedy selection honors budgets") {
  const ConnectivityMap map = build_connectivity(12, 7);
  for (int t = 0; t < 20; ++t) {
    const ChannelMatrix h = draw_channel(3, 12, CovarianceSpec::Identity(), RngStreamSpec{8}, t);
    const SelectionMask g = select_greedy(h, map, 5.0);
    CHECK(g.size() == 7);
    CHECK(satisfies_budgets(g, map));
  }
}

TEST_CASE("waterfilling trivial cases") {
  Eigen::MatrixXcd h1(1, 3);
  h1 << 1.0, 0.5, std::complex<double>(0.0, 2.0);
  CHECK(waterfill_users(h1, 4.0).p(0) == doctest::Approx(1.0));
  const PowerAllocation eq = waterfill_users(Eigen::MatrixXcd::Identity(3, 3), 2.0);
  for (int k = 0; k < 3; ++k) CHECK(eq.p(k) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("waterfilling matches a grid search on K=2") {
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd h =
        draw_channel(2, 3, CovarianceSpec::Identity(), RngStreamSpec{13}, t).h;
    const double rho = t % 2 ? 0.5 : 10.0;
    const Eigen::MatrixXcd g = h * h.adjoint();
    double grid = -1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double p1 = i * 1e-3;
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
      a.row(0) += rho * p1 * g.row(0);
      a.row(1) += rho * (2.0 - p1) * g.row(1);
      grid = std::max(grid, std::log2(std::abs(a.determinant())));
    }
    const PowerAllocation wf = waterfill_users(h, rho);
    CHECK(std::abs(wf.objective_bits - grid) <= 1e-4);
  }
}

TEST_CASE("waterfilling is equivariant under user reordering") {
  const Eigen::MatrixXcd h = draw_channel(3, 5, CovarianceSpec::Identity(), RngStreamSpec{3}, 0).h;
  Eigen::MatrixXcd swapped = h;
  swapped.row(0) = h.row(2);
  swapped.row(2) = h.row(0);
  const PowerAllocation a = waterfill_users(h, 6.0);
  const PowerAllocation b = waterfill_users(swapped, 6.0);
  CHECK(a.objective_bits == doctest::Approx(b.objective_bits).epsilon(1e-9));
  CHECK(a.p(0) == doctest::Approx(b.p(2)).epsilon(1e-4));
  CHECK(a.p(1) == doctest::Approx(b.p(1)).epsilon(1e-4));
}
