#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rqmcpg/envs.hpp"
#include "rqmcpg/estimators.hpp"
#include "rqmcpg/sampling.hpp"

namespace rqmcpg {

// Step sizes calibrated for the un-normalized score gradient on the default
// LQR instance; 7e-4 diverges within a few hundred updates.
inline constexpr double kDefaultSgdLr = 1e-6;
inline constexpr double kDefaultAsgdLr = 3e-5;

struct SgdConfig {
  double lr = kDefaultSgdLr;
  double momentum = 0.99;

  void validate() const;
};

struct SgdState {
  Eigen::VectorXd velocity;
};

/// Heavy-ball ascent: v <- momentum * v + grad; params <- params + lr * v.
void sgd_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, SgdState& state, const SgdConfig& cfg);

/// Accelerated SGD of Jain, Kakade, Kidambi, Netrapalli and Sidford, in the
/// parameterization of the reference AccSGD optimizer (long step lr*kappa/c,
/// averaging weights from kappa and xi, c = 0.7).
struct AsgdConfig {
  double lr = kDefaultAsgdLr;
  double kappa = 1000.0;
  double xi = 10.0;
  double small_const = 0.7;

  void validate() const;
};

struct AsgdState {
  /// Long-step (momentum) iterate; initialized to the parameters on first use.
  Eigen::VectorXd buffer;
};

/// One ASGD update written for minimization of a loss whose gradient is
/// `grad`. The trainer passes the negated value gradient.
void asgd_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AsgdState& state, const AsgdConfig& cfg);

using OptimizerConfig = std::variant<SgdConfig, AsgdConfig>;

struct TrainRecord {
  int iteration = 0;
  std::uint64_t interactions = 0;
  double value = 0.0;  ///< Exact lqr_value of the current gain; cost is -value.
  double wall_seconds = 0.0;
  Sampler sampler = Sampler::mc;
  std::uint64_t seed = 0;

  double cost() const noexcept { return -value; }
};

struct TrainConfig {
  SamplerConfig sampler;
  OptimizerConfig optimizer = SgdConfig{};
  std::optional<GaeConfig> cv;
  int iterations = 2000;
  std::size_t trajectories_per_update = 16;
  std::uint64_t seed = 0;
  /// Standard deviation of the Gaussian entries of the initial gain.
  double init_scale = 0.3;
};

/// Initial gain for a training seed.
Eigen::MatrixXd initial_gain(const LqrSpec& spec, std::uint64_t seed, double init_scale);

/// Vanilla policy gradient on the LQR instance. Returns iterations + 1
/// records; record i is taken after i updates.
std::vector<TrainRecord> vpg_train(const LqrSpec& spec, const TrainConfig& cfg);

}  // namespace rqmcpg
