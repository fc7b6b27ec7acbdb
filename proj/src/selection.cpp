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

#include "asel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asel/error.hpp"
#include "asel/linalg.hpp"

namespace asel {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-14;
constexpr double kSwapGain = 1e-12;

// The k entries of idx with the largest values, lowest index first on ties.
std::vector<int> top_k(const Eigen::VectorXd& values, std::vector<int> idx, int k) {
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (values(a) != values(b)) return values(a) > values(b);
    return a < b;
  });
  idx.resize(k);
  return idx;
}

SelectionMask from_indices(std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  return SelectionMask{std::move(idx)};
}

void check_map(const ChannelMatrix& h, const ConnectivityMap& map) {
  if (map.n_antennas != h.n_antennas()) {
    throw Error(ErrorCode::kInvalidDimensions, "connectivity map and channel disagree on N");
  }
}

// Relaxed objective and its gradient share one Cholesky factorization.
struct RelaxedEval {
  double value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd gradient;
};

RelaxedEval evaluate_relaxed(const Eigen::MatrixXcd& h, const Eigen::VectorXd& s, double rho,
                             bool with_gradient) {
  RelaxedEval out;
  const Eigen::MatrixXcd a = linalg::weighted_gram(h, s, rho);
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) return out;
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) logdet += std::log(llt.matrixLLT()(i, i).real());
  out.value = 2.0 * logdet;
  if (with_gradient) {
    const Eigen::MatrixXcd b = llt.solve(h);
    out.gradient = rho * (h.conjugate().cwiseProduct(b)).colwise().sum().real().transpose();
  }
  return out;
}

void project_groups(const Eigen::VectorXd& v, const ConnectivityMap& map, Eigen::VectorXd& out) {
  for (int g = 0; g < map.num_groups(); ++g) {
    linalg::project_capped_simplex(v, map.antenna_groups[g], map.budgets[g], 1.0, out);
  }
}

// One pass over the selected antennas; each is swapped for the unselected
// antenna of its group that raises the determinant most, if any does.
int polish_swaps(const Eigen::MatrixXcd& h, const ConnectivityMap& map, double rho,
                 std::vector<int>& selected) {
  const int n = static_cast<int>(h.cols());
  const auto owner = map.group_of_antenna();
  std::vector<char> in_mask(n, 0);
  for (int j : selected) in_mask[j] = 1;

  Eigen::MatrixXcd b;
  Eigen::VectorXd diag;
  auto refresh = [&] {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (int j : selected) s(j) = 1.0;
    Eigen::LLT<Eigen::MatrixXcd> llt(linalg::weighted_gram(h, s, rho));
    b = llt.solve(h);
    diag = (h.conjugate().cwiseProduct(b)).colwise().sum().real().transpose();
  };
  refresh();

  int swaps = 0;
  const std::vector<int> order = selected;
  for (int j : order) {
    if (!in_mask[j]) continue;
    const int g = owner[j];
    double best_ratio = 1.0 + kSwapGain;
    int best_i = -1;
    for (int i : map.antenna_groups[g]) {
      if (in_mask[i]) continue;
      const std::complex<double> cross = h.col(i).dot(b.col(j));
      const double ratio = (1.0 + rho * diag(i)) * (1.0 - rho * diag(j)) + rho * rho * std::norm(cross);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_i = i;
      }
    }
    if (best_i >= 0) {
      *std::find(selected.begin(), selected.end(), j) = best_i;
      in_mask[j] = 0;
      in_mask[best_i] = 1;
      ++swaps;
      refresh();
    }
  }
  std::sort(selected.begin(), selected.end());
  return swaps;
}

}  // namespace

Eigen::VectorXd SelectionMask::as_diagonal(int n) const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  for (int i : selected) s(i) = 1.0;
  return s;
}

Eigen::MatrixXcd gather_columns(const Eigen::MatrixXcd& h, const SelectionMask& mask) {
  Eigen::MatrixXcd out(h.rows(), mask.size());
  for (int c = 0; c < mask.size(); ++c) out.col(c) = h.col(mask.selected[c]);
  return out;
}

bool satisfies_budgets(const SelectionMask& mask, const ConnectivityMap& map) {
  if (mask.size() != map.n_chains) return false;
  const auto owner = map.group_of_antenna();
  std::vector<int> used(map.num_groups(), 0);
  for (std::size_t i = 0; i < mask.selected.size(); ++i) {
    const int a = mask.selected[i];
    if (a < 0 || a >= map.n_antennas) return false;
    if (i > 0 && mask.selected[i - 1] >= a) return false;
    ++used[owner[a]];
  }
  return used == map.budgets;
}

SelectionMask select_power_ff(const Eigen::VectorXd& powers, int m) {
  const int n = static_cast<int>(powers.size());
  if (m < 1 || m > n) throw Error(ErrorCode::kInvalidDimensions, "need 1 <= M <= N");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return from_indices(top_k(powers, std::move(idx), m));
}

SelectionMask select_power_pc(const Eigen::VectorXd& powers, const ConnectivityMap& map) {
  if (map.n_antennas != powers.size()) {
    throw Error(ErrorCode::kInvalidDimensions, "power vector length differs from N");
  }
  std::vector<int> chosen;
  for (int g = 0; g < map.num_groups(); ++g) {
    const auto best = top_k(powers, map.antenna_groups[g], map.budgets[g]);
    chosen.insert(chosen.end(), best.begin(), best.end());
  }
  return from_indices(std::move(chosen));
}

SelectionMask select_greedy(const ChannelMatrix& h, const ConnectivityMap& map, double rho) {
  check_map(h, map);
  const int n = h.n_antennas();
  const auto owner = map.group_of_antenna();
  std::vector<int> remaining = map.budgets;
  std::vector<char> taken(n, 0);
  Eigen::MatrixXcd a_inv = Eigen::MatrixXcd::Identity(h.k_users(), h.k_users());
  std::vector<int> chosen;
  for (int step = 0; step < map.n_chains; ++step) {
    int best = -1;
    double best_gain = -1.0;
    for (int i = 0; i < n; ++i) {
      if (taken[i] || remaining[owner[i]] == 0) continue;
      const double gain = (h.h.col(i).adjoint() * a_inv * h.h.col(i))(0, 0).real();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    taken[best] = 1;
    --remaining[owner[best]];
    chosen.push_back(best);
    const Eigen::VectorXcd u = a_inv * h.h.col(best);
    a_inv -= (rho / (1.0 + rho * best_gain)) * u * u.adjoint();
  }
  return from_indices(std::move(chosen));
}

double selection_capacity_bits(const ChannelMatrix& h, const SelectionMask& mask, double rho) {
  const Eigen::MatrixXcd sel = gather_columns(h.h, mask);
  return linalg::log_det_capacity(sel, Eigen::VectorXd::Ones(sel.rows()), rho) / std::log(2.0);
}

CsiSelection select_csi(const ChannelMatrix& h, const ConnectivityMap& map, double rho,
                        const CsiSolverOptions& options) {
  check_map(h, map);
  if (!(rho > 0.0)) throw Error(ErrorCode::kInvalidConfig, "rho must be positive");
  const int n = h.n_antennas();

  CsiSelection result;
  Eigen::VectorXd s(n);
  for (int g = 0; g < map.num_groups(); ++g) {
    const double fill = static_cast<double>(map.budgets[g]) / map.antenna_groups[g].size();
    for (int i : map.antenna_groups[g]) s(i) = fill;
  }

  RelaxedEval current = evaluate_relaxed(h.h, s, rho, true);
  double step = 1.0 / std::max(current.gradient.maxCoeff(), 1e-300);
  Eigen::VectorXd trial(n);
  for (int it = 0; it < options.max_iterations && !result.converged; ++it) {
    result.iterations = it + 1;
    while (true) {
      project_groups(s + step * current.gradient, map, trial);
      const double f = evaluate_relaxed(h.h, trial, rho, false).value;
      const double predicted = current.gradient.dot(trial - s);
      if (f >= current.value + kArmijo * predicted) {
        const double change = (f - current.value) / std::max(std::abs(current.value), 1e-300);
        s = trial;
        current = evaluate_relaxed(h.h, s, rho, true);
        step *= 2.0;
        if (change < options.relative_tolerance) result.converged = true;
        break;
      }
      step *= 0.5;
      if (step < kMinStep) {
        // No ascent direction left inside the feasible set.
        result.converged = true;
        break;
      }
    }
  }
  result.relaxed = s;

  if (!result.converged) {
    result.fell_back_to_greedy = true;
    result.mask = select_greedy(h, map, rho);
    return result;
  }

  std::vector<int> chosen;
  for (int g = 0; g < map.num_groups(); ++g) {
    const auto best = top_k(s, map.antenna_groups[g], map.budgets[g]);
    chosen.insert(chosen.end(), best.begin(), best.end());
  }
  std::sort(chosen.begin(), chosen.end());
  if (options.polish) result.polish_swaps = polish_swaps(h.h, map, rho, chosen);
  result.mask = SelectionMask{std::move(chosen)};
  return result;
}

PowerAllocation waterfill_users(const Eigen::MatrixXcd& h_sel, double rho,
                                const WaterfillOptions& options) {
  const int k = static_cast<int>(h_sel.rows());
  const Eigen::MatrixXcd gram = h_sel * h_sel.adjoint();
  const std::vector<int> all = [k] {
    std::vector<int> v(k);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }();

  auto value = [&](const Eigen::VectorXd& p) { return linalg::log_det_capacity(h_sel, p, rho); };
  auto gradient = [&](const Eigen::VectorXd& p) {
    // d/dp_k ln det(I + rho diag(p) G) = rho [G (I + rho diag(p) G)^{-1}]_kk
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(k, k);
    m.noalias() += rho * p.asDiagonal() * gram;
    const Eigen::MatrixXcd t = gram * m.partialPivLu().inverse();
    return Eigen::VectorXd(rho * t.diagonal().real());
  };

  PowerAllocation out = uniform_allocation(k);
  double f = value(out.p);
  Eigen::VectorXd grad = gradient(out.p);
  double step = 1.0 / std::max(grad.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd trial(k);
  for (int it = 0; it < options.max_iterations && k > 1; ++it) {
    out.iterations = it + 1;
    bool done = false;
    while (true) {
      linalg::project_capped_simplex(out.p + step * grad, all, k, k, trial);
      const double f_trial = value(trial);
      if (f_trial >= f + kArmijo * grad.dot(trial - out.p)) {
        const double change = (f_trial - f) / std::max(std::abs(f), 1e-300);
        out.p = trial;
        f = f_trial;
        grad = gradient(out.p);
        step *= 2.0;
        done = change < options.relative_tolerance;
        break;
      }
      step *= 0.5;
      if (step < kMinStep) {
        done = true;
        break;
      }
    }
    if (done) break;
  }
  out.objective_bits = f / std::log(2.0);
  return out;
}

}  // namespace asel
