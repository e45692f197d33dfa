#include "rqmcpg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rqmcpg/analysis.hpp"
#include "rqmcpg/estimators.hpp"

namespace rqmcpg {

std::string_view to_string(EnvKind e) noexcept { return e == EnvKind::brownian ? "brownian" : "lqr"; }

std::optional<EnvKind> parse_env(std::string_view name) noexcept {
  if (name == "brownian") return EnvKind::brownian;
  if (name == "lqr") return EnvKind::lqr;
  return std::nullopt;
}

std::string_view to_string(OptimizerKind o) noexcept { return o == OptimizerKind::asgd ? "asgd" : "sgd"; }

std::optional<OptimizerKind> parse_optimizer(std::string_view name) noexcept {
  if (name == "sgd") return OptimizerKind::sgd;
  if (name == "asgd") return OptimizerKind::asgd;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (samplers.empty()) throw std::invalid_argument("at least one sampler is required");
  if (log2n_min < 0 || log2n_max < log2n_min || log2n_max > 20) {
    throw std::invalid_argument("log2n range must satisfy 0 <= min <= max <= 20");
  }
  if (seeds < 1) throw std::invalid_argument("seeds must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(noise_scale >= 0.0)) throw std::invalid_argument("noise scale must be >= 0");
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  if (record_every < 1) throw std::invalid_argument("record-every must be >= 1");
  if (optimizers.empty() || cv_options.empty()) throw std::invalid_argument("learning grid is empty");
  SgdConfig{lr, momentum}.validate();
  AsgdConfig{asgd_lr, kappa, xi}.validate();
  GaeConfig{gae_gamma, gae_lambda}.validate();
}

std::vector<std::size_t> ExperimentConfig::sample_sizes() const {
  std::vector<std::size_t> ns;
  for (int k = log2n_min; k <= log2n_max; ++k) ns.push_back(std::size_t{1} << k);
  return ns;
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("QMC_THREADS")) {
    const int c = std::atoi(cap);
    if (c > 0) n = std::min(n, c);
  }
  return std::max(1, n);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const int workers = static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

RngStream cell_stream(Sampler sampler, std::size_t n, std::uint64_t seed) {
  return RngStream(seed).split(static_cast<std::uint64_t>(sampler)).split(n);
}

LqrSpec experiment_lqr(const ExperimentConfig& cfg) {
  return make_random_lqr(cfg.env_seed, cfg.noise_scale, cfg.horizon);
}

BrownianSpec experiment_brownian(const ExperimentConfig& cfg) {
  BrownianSpec spec;
  spec.horizon = cfg.horizon;
  spec.validate();
  return spec;
}

namespace {

struct Cell {
  Sampler sampler;
  std::size_t n;
  std::uint64_t seed;
};

std::vector<Cell> grid(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  for (Sampler s : cfg.samplers) {
    for (std::size_t n : cfg.sample_sizes()) {
      for (int i = 0; i < cfg.seeds; ++i) cells.push_back({s, n, cfg.seed_base + static_cast<std::uint64_t>(i)});
    }
  }
  return cells;
}

SamplerConfig sampler_config(const ExperimentConfig& cfg, Sampler s) { return {s, cfg.randomization, cfg.sort_norm}; }

}  // namespace

EvalResult run_eval(const ExperimentConfig& cfg) {
  cfg.validate();
  std::unique_ptr<Environment> env;
  std::unique_ptr<Policy> policy;
  EvalResult result;
  if (cfg.env == EnvKind::brownian) {
    const BrownianSpec spec = experiment_brownian(cfg);
    auto p = std::make_unique<BrownianPolicy>(cfg.brownian_mean, cfg.brownian_stddev);
    result.truth = brownian_value(*p, spec);
    env = std::make_unique<BrownianEnv>(spec);
    policy = std::move(p);
  } else {
    LqrSpec spec = experiment_lqr(cfg);
    auto p = std::make_unique<LinearGaussianPolicy>(lqr_riccati_gain(spec));
    result.truth = lqr_value(spec, *p);
    env = std::make_unique<LqrEnv>(std::move(spec));
    policy = std::move(p);
  }

  const auto cells = grid(cfg);
  result.rows.resize(cells.size());
  parallel_for(cells.size(), worker_count(cfg.threads), [&](std::size_t i) {
    const Cell& c = cells[i];
    const auto trajs = collect_trajectories(*env, *policy, sampler_config(cfg, c.sampler), c.n,
                                            cell_stream(c.sampler, c.n, c.seed));
    const double est = value_by_returns(trajs).value;
    result.rows[i] = {c.sampler, c.n, c.seed, est, (est - result.truth) * (est - result.truth)};
  });

  const auto ns = cfg.sample_sizes();
  for (Sampler s : cfg.samplers) {
    std::vector<double> xs, mses;
    for (std::size_t n : ns) {
      std::vector<double> estimates, sq;
      for (const auto& r : result.rows) {
        if (r.sampler == s && r.n == n) {
          estimates.push_back(r.estimate);
          sq.push_back(r.sq_error);
        }
      }
      const double m = mse(estimates, result.truth);
      const double half = sq.size() >= 2 ? ci95(sq).halfwidth : 0.0;
      result.summary.push_back({s, n, m, half});
      xs.push_back(static_cast<double>(n));
      mses.push_back(m);
    }
    if (xs.size() >= 3 && std::all_of(mses.begin(), mses.end(), [](double v) { return v > 0.0; })) {
      result.slopes.emplace_back(s, loglog_slope(xs, mses));
    }
  }
  return result;
}

Eigen::VectorXd lqr_score_gradient(const LqrEnv& env, const LinearGaussianPolicy& policy, const SamplerConfig& sampler,
                                   std::size_t n, const RngStream& rng) {
  return score_gradient(collect_trajectories(env, policy, sampler, n, rng), policy).grad;
}

GradResult run_gradcheck(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.env != EnvKind::lqr) throw std::invalid_argument("gradcheck supports the lqr environment only");
  const LqrEnv env(experiment_lqr(cfg));
  // Default: the gain learning starts from, where the gradient is far from zero.
  const LinearGaussianPolicy policy(cfg.gradcheck_gain ? *cfg.gradcheck_gain
                                                       : initial_gain(env.spec(), cfg.seed_base, cfg.init_scale));

  GradResult result;
  const std::uint64_t truth_seed = cfg.truth_seed.value_or(cfg.seed_base + 1'000'003ULL);
  result.truth = lqr_score_gradient(env, policy, {Sampler::mc, cfg.randomization, cfg.sort_norm}, cfg.truth_budget,
                                    cell_stream(Sampler::mc, cfg.truth_budget, truth_seed));
  result.analytic = lqr_value_gradient(env.spec(), policy);

  const auto cells = grid(cfg);
  std::vector<Eigen::VectorXd> grads(cells.size());
  parallel_for(cells.size(), worker_count(cfg.threads), [&](std::size_t i) {
    const Cell& c = cells[i];
    grads[i] = lqr_score_gradient(env, policy, sampler_config(cfg, c.sampler), c.n, cell_stream(c.sampler, c.n, c.seed));
  });

  const double truth_norm = result.truth.norm();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double g_norm = grads[i].norm();
    const double mis = (g_norm == 0.0 || truth_norm == 0.0) ? 1.0 : 1.0 - grads[i].dot(result.truth) / (g_norm * truth_norm);
    result.rows.push_back({cells[i].sampler, cells[i].n, cells[i].seed, (grads[i] - result.truth).squaredNorm(), mis});
  }
  for (Sampler s : cfg.samplers) {
    for (std::size_t n : cfg.sample_sizes()) {
      std::vector<double> sq, mis;
      for (const auto& r : result.rows) {
        if (r.sampler == s && r.n == n) {
          sq.push_back(r.sq_error);
          mis.push_back(r.misalignment);
        }
      }
      GradSummaryRow row{s, n, 0.0, 0.0, 0.0, 0.0};
      if (sq.size() >= 2) {
        const auto v = ci95(sq);
        const auto a = ci95(mis);
        row = {s, n, v.mean, v.halfwidth, a.mean, a.halfwidth};
      } else {
        row.variance = sq.front();
        row.misalignment = mis.front();
      }
      result.summary.push_back(row);
    }
  }
  return result;
}

std::string learn_label(Sampler sampler, OptimizerKind optimizer, bool cv) {
  std::string label(to_string(sampler));
  if (cv) label += "+cv";
  if (optimizer == OptimizerKind::asgd) label += "+asgd";
  return label;
}

TrainConfig train_config(const ExperimentConfig& cfg, Sampler sampler, OptimizerKind optimizer, bool cv,
                         std::uint64_t seed) {
  TrainConfig tc;
  tc.sampler = sampler_config(cfg, sampler);
  if (optimizer == OptimizerKind::asgd) {
    tc.optimizer = AsgdConfig{cfg.asgd_lr, cfg.kappa, cfg.xi};
  } else {
    tc.optimizer = SgdConfig{cfg.lr, cfg.momentum};
  }
  if (cv) tc.cv = GaeConfig{cfg.gae_gamma, cfg.gae_lambda};
  tc.iterations = cfg.iterations;
  tc.trajectories_per_update = cfg.trajectories_per_update;
  tc.seed = seed;
  tc.init_scale = cfg.init_scale;
  return tc;
}

std::vector<LearnRun> run_learn(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.env != EnvKind::lqr) throw std::invalid_argument("learn supports the lqr environment only");
  const LqrSpec spec = experiment_lqr(cfg);
  std::vector<LearnRun> runs;
  for (Sampler s : cfg.samplers) {
    for (OptimizerKind o : cfg.optimizers) {
      for (bool cv : cfg.cv_options) {
        for (int i = 0; i < cfg.seeds; ++i) {
          runs.push_back({learn_label(s, o, cv), s, o, cv, cfg.seed_base + static_cast<std::uint64_t>(i), {}});
        }
      }
    }
  }
  parallel_for(runs.size(), worker_count(cfg.threads), [&](std::size_t i) {
    auto& run = runs[i];
    run.records = vpg_train(spec, train_config(cfg, run.sampler, run.optimizer, run.cv, run.seed));
  });
  return runs;
}

std::vector<double> median_cost_curve(const std::vector<const LearnRun*>& runs) {
  if (runs.empty()) throw std::invalid_argument("median_cost_curve: no runs");
  const std::size_t len = runs.front()->records.size();
  std::vector<double> curve(len);
  std::vector<double> costs(runs.size());
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r]->records.size() != len) throw std::invalid_argument("median_cost_curve: unequal run lengths");
      const double c = runs[r]->records[t].cost();
      costs[r] = std::isnan(c) ? std::numeric_limits<double>::infinity() : c;
    }
    std::sort(costs.begin(), costs.end());
    const std::size_t mid = costs.size() / 2;
    curve[t] = costs.size() % 2 ? costs[mid] : 0.5 * (costs[mid - 1] + costs[mid]);
  }
  return curve;
}

}  // namespace rqmcpg
