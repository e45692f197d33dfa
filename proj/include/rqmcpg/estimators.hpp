#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rqmcpg/envs.hpp"
#include "rqmcpg/lowdisc.hpp"

namespace rqmcpg {

struct ValueEstimate {
  double value = 0.0;
  std::size_t n = 0;
  PointKind kind = PointKind::mc;
  std::optional<std::uint64_t> seed;
};

struct GradientEstimate {
  Eigen::VectorXd grad;
  std::size_t n = 0;
  PointKind kind = PointKind::mc;
};

/// Action-value function used by the critic-based estimators.
class Critic {
 public:
  virtual ~Critic() = default;
  virtual double value(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const = 0;
  virtual bool has_action_gradient() const { return false; }
  /// d Q / d a; only valid when has_action_gradient().
  virtual Eigen::VectorXd action_gradient(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const;
};

/// Adapts one stage of the exact LQR critic.
class QuadraticCritic final : public Critic {
 public:
  explicit QuadraticCritic(QuadraticStage stage) : stage_(std::move(stage)) {}
  double value(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const override { return stage_.value(s, a); }
  bool has_action_gradient() const override { return true; }
  Eigen::VectorXd action_gradient(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const override {
    return stage_.action_gradient(s, a);
  }

 private:
  QuadraticStage stage_;
};

class CriticLacksGradient : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct GaeConfig {
  double gamma = 0.99;
  double lam = 0.95;

  void validate() const;
};

/// b(s) = weights . s + bias.
struct LinearBaseline {
  Eigen::VectorXd weights;
  double bias = 0.0;

  double operator()(const Eigen::VectorXd& s) const { return weights.dot(s) + bias; }
};

struct ControlVariate {
  GaeConfig gae;
  LinearBaseline baseline;
};

/// Mean over trajectories of the undiscounted return.
ValueEstimate value_by_returns(const std::vector<Trajectory>& trajs, PointKind kind = PointKind::mc,
                               std::optional<std::uint64_t> seed = std::nullopt);

/// Mean over states of (1/N) sum_i Q(s, pi(s, u_i)) with one point set per state.
ValueEstimate value_by_critic(const std::vector<Eigen::VectorXd>& states, const Critic& critic, const Policy& policy,
                              const std::vector<PointSet>& pointsets);

/// Score-function (likelihood-ratio) gradient of the expected return.
/// Each step is weighted by its reward-to-go, or by its GAE advantage when a
/// control variate is supplied; the sum over steps is averaged over trajectories.
GradientEstimate score_gradient(const std::vector<Trajectory>& trajs, const Policy& policy,
                                const std::optional<ControlVariate>& cv = std::nullopt);

/// Mean of Q(s, a_i) * grad log pi(a_i | s) with a_i = pi(s, u_i).
GradientEstimate plugin_gradient(const std::vector<Eigen::VectorXd>& states, const Critic& critic, const Policy& policy,
                                 const std::vector<PointSet>& pointsets);

/// Mean of (da/dtheta)^T grad_a Q(s, a_i) through the reparameterized action.
/// Throws CriticLacksGradient when the critic has no action gradient.
GradientEstimate reparam_gradient(const std::vector<Eigen::VectorXd>& states, const Critic& critic,
                                  const Policy& policy, const std::vector<PointSet>& pointsets);

/// Ridge-regularized (1e-8) least squares of returns on (state, 1).
LinearBaseline fit_linear_baseline(const std::vector<Eigen::VectorXd>& states, const std::vector<double>& returns);

/// Fits the baseline on every (s_t, reward-to-go) pair of the batch.
LinearBaseline fit_linear_baseline(const std::vector<Trajectory>& trajs);

/// A_t = delta_t + gamma * lam * A_{t+1}, delta_t = r_t + gamma b(s_{t+1}) - b(s_t),
/// with b = 0 after the last step.
std::vector<double> gae_advantages(const Trajectory& traj, const LinearBaseline& baseline, const GaeConfig& cfg);

}  // namespace rqmcpg
