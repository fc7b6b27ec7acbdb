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

#include "asel/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

#include "asel/analysis.hpp"
#include "asel/error.hpp"
#include "asel/selection.hpp"
#include "asel/units.hpp"

namespace asel {

int worker_threads() {
  if (const char* env = std::getenv("ASEL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = worker_threads();
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

PointPlan plan_point(const ScenarioConfig& scenario, const SwitchCatalog& catalog) {
  scenario.validate();
  PointPlan plan;
  plan.scenario = scenario;
  const int n = scenario.n;
  const int m = scenario.m;
  const int k = scenario.k;
  if (scenario.selection == SelectionMode::kFullMimo) {
    plan.fabric.n_antennas = m;
    plan.fabric.n_chains = m;
    plan.map = fully_flexible_map(m, m);
  } else {
    plan.fabric = design_fabric(n, m, scenario.architecture, catalog);
    plan.loss_db = plan.fabric.total_loss_db;
    plan.map = is_partial(scenario.selection) ? build_connectivity(n, m) : fully_flexible_map(n, m);
  }
  if (scenario.eta_coh == 0) {
    plan.frame = no_overhead_frame();
  } else {
    const CsiMode mode = uses_instantaneous_csi(scenario.selection) ? CsiMode::kInstantaneous
                                                                     : CsiMode::kPowerBased;
    const int eta_tr = scenario.selection == SelectionMode::kFullMimo
                           ? k
                           : training_overhead(n, m, k, mode);
    plan.frame = frame_split(scenario.eta_coh, eta_tr, scenario.dl_fraction);
  }
  plan.rho_eff = db_to_linear(scenario.rho_db);
  if (scenario.loss_mode == LossMode::kDivideRho) plan.rho_eff /= db_to_linear(plan.loss_db);
  return plan;
}

double trial_rate(const PointPlan& plan, const ChannelMatrix& h, const Eigen::VectorXd& powers,
                  TrialFlags& flags) {
  const ScenarioConfig& sc = plan.scenario;
  Eigen::MatrixXcd h_sel;
  switch (sc.selection) {
    case SelectionMode::kFullMimo:
      h_sel = h.h.leftCols(sc.m);
      break;
    case SelectionMode::kPowerFF:
      h_sel = gather_columns(h.h, select_power_ff(powers, sc.m));
      break;
    case SelectionMode::kPowerPC:
      h_sel = gather_columns(h.h, select_power_pc(powers, plan.map));
      break;
    case SelectionMode::kCsiFF:
    case SelectionMode::kCsiPC: {
      const CsiSelection sel = select_csi(h, plan.map, plan.rho_eff);
      flags.csi_fallback = sel.fell_back_to_greedy;
      h_sel = gather_columns(h.h, sel.mask);
      break;
    }
  }
  if (sc.precoder == Precoder::kZf) {
    const RateSample r = zf_sum_rate(h_sel, plan.rho_eff, 1.0);
    flags.rank_deficient = r.rank_deficient;
    return r.sum_rate;
  }
  const PowerAllocation p =
      sc.waterfill ? waterfill_users(h_sel, plan.rho_eff) : uniform_allocation(sc.k);
  return sum_capacity(h_sel, p, plan.rho_eff, 1.0).sum_rate;
}

namespace {

// Neumaier-compensated mean and standard error over the finite entries.
struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
  int count = 0;
};

Moments moments(const std::vector<double>& xs, double scale) {
  double sum = 0.0, comp = 0.0;
  int count = 0;
  auto add = [&](double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  for (double x : xs) {
    if (!std::isfinite(x)) continue;
    add(x * scale);
    ++count;
  }
  Moments mo;
  mo.count = count;
  if (count == 0) {
    mo.mean = std::numeric_limits<double>::quiet_NaN();
    return mo;
  }
  mo.mean = (sum + comp) / count;
  if (count > 1) {
    double ss = 0.0, c2 = 0.0;
    for (double x : xs) {
      if (!std::isfinite(x)) continue;
      const double d = x * scale - mo.mean;
      const double y = d * d - c2;
      const double t = ss + y;
      c2 = (t - ss) - y;
      ss = t;
    }
    mo.std_error = std::sqrt(ss / (count - 1) / count);
  }
  return mo;
}

// Raw (prelog-free) rates per trial for every distinct way of producing a
// rate at one operating point, evaluated on shared channel draws.
struct RateJob {
  PointPlan plan;
  std::vector<double> rates;
  std::vector<char> fallback;
  std::vector<char> rank_deficient;
};

std::string job_key(const PointPlan& p) {
  const ScenarioConfig& s = p.scenario;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d|%d|%d|%d|%a|%d", static_cast<int>(s.selection),
                static_cast<int>(s.precoder), s.m, s.k, p.rho_eff, s.waterfill ? 1 : 0);
  return buf;
}

void run_jobs(std::vector<RateJob*>& jobs, const ScenarioConfig& base, int draw_n, int threads) {
  const int trials = base.trials;
  for (RateJob* j : jobs) {
    j->rates.assign(trials, std::numeric_limits<double>::quiet_NaN());
    j->fallback.assign(trials, 0);
    j->rank_deficient.assign(trials, 0);
  }
  const RngStreamSpec stream{base.seed};
  parallel_for(trials, threads, [&](int t) {
    const ChannelMatrix h = draw_channel(base.k, draw_n, base.covariance, stream,
                                         static_cast<std::uint64_t>(t));
    const Eigen::VectorXd powers = column_powers(h);
    for (RateJob* j : jobs) {
      TrialFlags flags;
      try {
        j->rates[t] = trial_rate(j->plan, h, powers, flags);
      } catch (const std::exception&) {
        continue;  // stays NaN and counts as a failed trial
      }
      j->fallback[t] = flags.csi_fallback;
      j->rank_deficient[t] = flags.rank_deficient;
    }
  });
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) s += (s.empty() ? "" : ";") + f;
  return s;
}

ResultRow base_row(const SweepConfig& cfg, const SeriesSpec& s, const PointPlan& plan, int value) {
  ResultRow r;
  r.scenario_id = cfg.scenario_id;
  r.m = plan.scenario.m;
  r.mode = std::string(to_string(s.selection));
  r.architecture = s.selection == SelectionMode::kFullMimo ? "NONE"
                                                           : std::string(to_string(s.architecture));
  r.loss_db = plan.loss_db;
  r.prelog = plan.frame.prelog();
  r.series = s.name;
  r.sweep = cfg.sweep;
  r.x = value;
  r.n = plan.scenario.deployed_antennas();
  r.k = plan.scenario.k;
  r.rho_db = plan.scenario.rho_db;
  r.precoder = std::string(to_string(s.precoder));
  r.loss_mode = std::string(to_string(s.loss_mode));
  r.eta_coh = plan.scenario.eta_coh;
  return r;
}

}  // namespace

RateEstimate ergodic_rate(const ScenarioConfig& scenario, const SwitchCatalog& catalog,
                          int threads) {
  RateJob job{plan_point(scenario, catalog), {}, {}, {}};
  std::vector<RateJob*> jobs{&job};
  run_jobs(jobs, scenario, scenario.deployed_antennas(), threads);
  RateEstimate est;
  est.prelog = job.plan.frame.prelog();
  est.loss_db = job.plan.loss_db;
  est.infeasible_frame = job.plan.frame.infeasible;
  const Moments mo = moments(job.rates, est.prelog);
  est.mean = mo.mean;
  est.std_error = mo.std_error;
  est.trials = scenario.trials;
  est.failures = scenario.trials - mo.count;
  for (int t = 0; t < scenario.trials; ++t) {
    est.csi_fallbacks += job.fallback[t];
    est.rank_deficient += job.rank_deficient[t];
  }
  if (est.failures * 100 > scenario.trials) {
    throw Error(ErrorCode::kTooManyFailures,
                std::to_string(est.failures) + " of " + std::to_string(scenario.trials) +
                    " trials failed");
  }
  return est;
}

ResultTable run_sweep(const SweepConfig& cfg, int threads) {
  cfg.validate();
  ResultTable table;
  table.seed = cfg.base.seed;
  table.config_hash = fingerprint(cfg.to_json().dump());

  // Rates are prelog-free, so a sweep over eta_coh reuses one set of trials.
  std::map<std::string, RateJob> cache;

  for (int value : cfg.values) {
    std::vector<PointPlan> plans;
    for (std::size_t i = 0; i < cfg.series.size(); ++i) {
      plans.push_back(plan_point(cfg.point(cfg.series[i], value), cfg.catalog));
    }

    // Monte Carlo jobs not yet computed, drawn together.
    std::vector<RateJob*> fresh;
    int draw_n = 1;
    for (std::size_t i = 0; i < cfg.series.size(); ++i) {
      if (cfg.series[i].estimator != Estimator::kMonteCarlo) continue;
      const std::string key = job_key(plans[i]);
      auto [it, inserted] = cache.try_emplace(key, RateJob{plans[i], {}, {}, {}});
      if (inserted) fresh.push_back(&it->second);
      draw_n = std::max(draw_n, plans[i].scenario.deployed_antennas());
    }
    if (!fresh.empty()) run_jobs(fresh, cfg.base, std::max(draw_n, cfg.base.n), threads);

    for (std::size_t i = 0; i < cfg.series.size(); ++i) {
      const SeriesSpec& s = cfg.series[i];
      const PointPlan& plan = plans[i];
      std::vector<std::string> flags;
      if (plan.frame.infeasible) flags.push_back("infeasible-frame");
      double rate_mean = std::numeric_limits<double>::quiet_NaN();
      double rate_se = 0.0;

      try {
      if (s.estimator == Estimator::kMonteCarlo) {
        const RateJob& job = cache.at(job_key(plan));
        const Moments mo = moments(job.rates, plan.frame.prelog());
        ResultRow r = base_row(cfg, s, plan, value);
        r.metric = "sum_rate";
        r.mean_rate = rate_mean = mo.mean;
        r.stderr_rate = rate_se = mo.std_error;
        r.trials = cfg.base.trials;
        r.failures = cfg.base.trials - mo.count;
        int fb = 0, rd = 0;
        for (int t = 0; t < cfg.base.trials; ++t) {
          fb += job.fallback[t];
          rd += job.rank_deficient[t];
        }
        if (r.failures * 100 > cfg.base.trials) flags.push_back("too-many-failures");
        if (fb > 0) flags.push_back("csi-greedy-fallback=" + std::to_string(fb));
        if (rd > 0) flags.push_back("rank-deficient=" + std::to_string(rd));
        r.flags = join_flags(flags);
        table.append(r);
      } else if (s.estimator == Estimator::kApproxSingle ||
                 s.estimator == Estimator::kApproxMixture) {
        ResultRow r = base_row(cfg, s, plan, value);
        r.metric = s.estimator == Estimator::kApproxSingle ? "approx_single" : "approx_mixture";
        r.trials = cfg.g_trials;
        const ScenarioConfig& sc = plan.scenario;
        const OrderStatSpec spec{sc.n, sc.k};
        PowerScaling ps;
        if (is_partial(s.selection)) {
          const RankSetDistribution dist = rank_set_distribution(build_connectivity(sc.n, sc.m));
          if (!dist.exact) flags.push_back("rank-sets-sampled");
          ps = power_scaling_pc(build_connectivity(sc.n, sc.m), spec, dist);
        } else if (s.selection == SelectionMode::kPowerFF) {
          ps = power_scaling_ff(sc.n, sc.m, spec);
        } else {
          throw Error(ErrorCode::kInvalidConfig,
                      "approximations exist for power-based selection only (series " + s.name + ")");
        }
        const ApproxResult a = approx_capacity(ps, sc.k, sc.m, plan.rho_eff,
                                               s.estimator == Estimator::kApproxSingle
                                                   ? ApproxMode::kSingle
                                                   : ApproxMode::kMixture,
                                               cfg.g_trials, RngStreamSpec{cfg.base.seed});
        r.mean_rate = rate_mean = a.mean * plan.frame.prelog();
        r.stderr_rate = rate_se = a.std_error * plan.frame.prelog();
        r.flags = join_flags(flags);
        table.append(r);
      } else {
        ResultRow r = base_row(cfg, s, plan, value);
        r.metric = "loss_db";
        r.mean_rate = plan.loss_db;
        r.flags = join_flags(flags);
        table.append(r);
        if (s.selection != SelectionMode::kFullMimo) {
          r.metric = "t_rf";
          r.mean_rate = plan.fabric.t_rf;
          table.append(r);
          r.metric = "t_an";
          r.mean_rate = plan.fabric.t_an;
          table.append(r);
        }
      }
      } catch (const Error& e) {
        ResultRow r = base_row(cfg, s, plan, value);
        r.metric = "error";
        r.mean_rate = rate_mean;
        flags.push_back("error=" + std::string(to_string(e.code())));
        r.flags = join_flags(flags);
        table.append(r);
        continue;
      }

      if (cfg.energy) {
        // Only a PA that compensates the fabric pays for its loss in power.
        const double pa_loss = s.loss_mode == LossMode::kPaCompensate ? plan.loss_db : 0.0;
        const FrameConfig frame =
            plan.scenario.eta_coh == 0 ? no_overhead_frame() : plan.frame;
        const EnergyReport e = total_power(plan.scenario.m, plan.scenario.k, pa_loss, frame,
                                           cfg.energy_params, cfg.accounting);
        const std::pair<const char*, double> parts[] = {
            {"p_pa", e.p_pa},   {"p_rf", e.p_rf}, {"p_conv", e.p_conv},
            {"p_int", e.p_int}, {"p_bb", e.p_bb}, {"total_power", e.total},
        };
        for (const auto& [name, watts] : parts) {
          ResultRow r = base_row(cfg, s, plan, value);
          r.metric = name;
          r.mean_rate = watts;
          table.append(r);
        }
        if (s.estimator != Estimator::kLossOnly) {
          const double bw = rate_bandwidth(cfg.energy_params, cfg.accounting);
          ResultRow r = base_row(cfg, s, plan, value);
          r.metric = "xi";
          r.trials = s.estimator == Estimator::kMonteCarlo ? cfg.base.trials : cfg.g_trials;
          r.mean_rate = rate_mean * bw / e.total;
          r.stderr_rate = rate_se * bw / e.total;
          r.flags = join_flags(flags);
          table.append(r);
        }
      }
    }
    // Rates at one M are never reused by another M.
    if (cfg.sweep == "M") cache.clear();
  }
  return table;
}

}  // namespace asel
