#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rqmcpg/envs.hpp"
#include "rqmcpg/learn.hpp"
#include "rqmcpg/sampling.hpp"

namespace rqmcpg {

enum class EnvKind { brownian, lqr };

std::string_view to_string(EnvKind e) noexcept;
std::optional<EnvKind> parse_env(std::string_view name) noexcept;

enum class OptimizerKind { sgd, asgd };

std::string_view to_string(OptimizerKind o) noexcept;
std::optional<OptimizerKind> parse_optimizer(std::string_view name) noexcept;

/// Shared configuration of the evaluation, gradient and learning experiments.
struct ExperimentConfig {
  EnvKind env = EnvKind::lqr;
  std::vector<Sampler> samplers{Sampler::mc, Sampler::rqmc};
  Randomization randomization = Randomization::lms_shift;
  SortNorm sort_norm = SortNorm::l1;
  int log2n_min = 4;
  int log2n_max = 12;
  int seeds = 30;
  std::uint64_t seed_base = 0;
  int horizon = 20;
  double noise_scale = kDefaultLqrNoiseScale;
  std::uint64_t env_seed = 0;

  // Brownian evaluation policy.
  double brownian_mean = 0.0;
  double brownian_stddev = 1.0;

  // Gradient check.
  std::size_t truth_budget = std::size_t{1} << 14;
  std::optional<std::uint64_t> truth_seed;
  /// When set, the LQR gradient-check policy; otherwise initial_gain(seed_base).
  std::optional<Eigen::MatrixXd> gradcheck_gain;

  // Learning.
  std::vector<OptimizerKind> optimizers{OptimizerKind::sgd};
  std::vector<bool> cv_options{false};
  int iterations = 2000;
  std::size_t trajectories_per_update = 16;
  double lr = kDefaultSgdLr;
  double momentum = 0.99;
  double asgd_lr = kDefaultAsgdLr;
  double kappa = 1000.0;
  double xi = 10.0;
  double gae_gamma = 0.99;
  double gae_lambda = 0.95;
  double init_scale = 0.3;
  int record_every = 1;

  /// Worker threads; 0 means hardware concurrency capped by QMC_THREADS.
  int threads = 0;

  void validate() const;
  std::vector<std::size_t> sample_sizes() const;
};

/// Number of workers: `requested` if positive, else hardware concurrency,
/// capped by the QMC_THREADS environment variable.
int worker_count(int requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Stream for one (sampler, sample size, seed) cell.
RngStream cell_stream(Sampler sampler, std::size_t n, std::uint64_t seed);

/// LQR instance and policies used by the experiments.
LqrSpec experiment_lqr(const ExperimentConfig& cfg);
BrownianSpec experiment_brownian(const ExperimentConfig& cfg);

// --- eval -------------------------------------------------------------------

struct EvalRow {
  Sampler sampler;
  std::size_t n;
  std::uint64_t seed;
  double estimate;
  double sq_error;
};

struct EvalSummaryRow {
  Sampler sampler;
  std::size_t n;
  double mse;
  double ci_halfwidth;
};

struct EvalResult {
  double truth = 0.0;
  std::vector<EvalRow> rows;
  std::vector<EvalSummaryRow> summary;
  std::vector<std::pair<Sampler, double>> slopes;
};

EvalResult run_eval(const ExperimentConfig& cfg);

// --- gradcheck --------------------------------------------------------------

struct GradRow {
  Sampler sampler;
  std::size_t n;
  std::uint64_t seed;
  double sq_error;
  double misalignment;  ///< 1 - cos(g_hat, g)
};

struct GradSummaryRow {
  Sampler sampler;
  std::size_t n;
  double variance;
  double variance_ci;
  double misalignment;
  double misalignment_ci;
};

struct GradResult {
  Eigen::VectorXd truth;
  Eigen::VectorXd analytic;
  std::vector<GradRow> rows;
  std::vector<GradSummaryRow> summary;
};

/// Score-function gradient of the LQR policy, one cell.
Eigen::VectorXd lqr_score_gradient(const LqrEnv& env, const LinearGaussianPolicy& policy, const SamplerConfig& sampler,
                                   std::size_t n, const RngStream& rng);

GradResult run_gradcheck(const ExperimentConfig& cfg);

// --- learn ------------------------------------------------------------------

struct LearnRun {
  std::string label;  ///< sampler plus "+cv" / "+asgd" suffixes
  Sampler sampler;
  OptimizerKind optimizer;
  bool cv;
  std::uint64_t seed;
  std::vector<TrainRecord> records;
};

std::string learn_label(Sampler sampler, OptimizerKind optimizer, bool cv);
TrainConfig train_config(const ExperimentConfig& cfg, Sampler sampler, OptimizerKind optimizer, bool cv,
                         std::uint64_t seed);

std::vector<LearnRun> run_learn(const ExperimentConfig& cfg);

/// Per-iteration median cost across runs (all runs must have equal length).
std::vector<double> median_cost_curve(const std::vector<const LearnRun*>& runs);

}  // namespace rqmcpg
