#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rqmcpg/lowdisc.hpp"
#include "rqmcpg/normal.hpp"
#include "rqmcpg/rng.hpp"

namespace rqmcpg {

struct StepResult {
  Eigen::VectorXd next_state;
  double reward;
};

/// One episode. states has horizon+1 entries; uniforms holds the
/// horizon * action_dim variates that produced the actions, in step order.
struct Trajectory {
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> actions;
  std::vector<double> rewards;
  std::vector<double> uniforms;

  int horizon() const noexcept { return static_cast<int>(rewards.size()); }
  double total_reward() const noexcept;
  /// rewards[t] + ... + rewards[T-1] for every t.
  std::vector<double> rewards_to_go() const;
};

/// Episodic environment with fixed horizon. Dynamics randomness, when any,
/// is drawn from the caller's stream; actions are always supplied.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual int state_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual int horizon() const = 0;
  virtual Eigen::VectorXd reset(RngStream& noise) const = 0;
  virtual StepResult step(const Eigen::VectorXd& s, const Eigen::VectorXd& a, RngStream& noise) const = 0;
};

/// Gaussian policy with a differentiable parameter vector.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual int num_params() const = 0;
  virtual Eigen::VectorXd params() const = 0;
  virtual void set_params(const Eigen::VectorXd& theta) = 0;
  virtual GaussianHead head(const Eigen::VectorXd& s) const = 0;
  /// Gradient of log pi(a | s) with respect to the parameters.
  virtual Eigen::VectorXd score(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const = 0;
  /// (da/dtheta)^T g for the reparameterized action a = mean(s) + stddev(s) * z.
  virtual Eigen::VectorXd reparam_vjp(const Eigen::VectorXd& s, const Eigen::VectorXd& z,
                                      const Eigen::VectorXd& g) const = 0;
};

// ---------------------------------------------------------------------------
// Brownian motion

struct BrownianSpec {
  double step_scale = 0.1;
  int horizon = 20;
  double init_state = 0.0;

  void validate() const;
};

/// s' = s + step_scale * a, reward |s'| (a cost).
StepResult brownian_step(const BrownianSpec& spec, double s, double a);

class BrownianEnv final : public Environment {
 public:
  explicit BrownianEnv(BrownianSpec spec);
  const BrownianSpec& spec() const noexcept { return spec_; }

  int state_dim() const override { return 1; }
  int action_dim() const override { return 1; }
  int horizon() const override { return spec_.horizon; }
  Eigen::VectorXd reset(RngStream& noise) const override;
  StepResult step(const Eigen::VectorXd& s, const Eigen::VectorXd& a, RngStream& noise) const override;

 private:
  BrownianSpec spec_;
};

/// State-independent N(mean, stddev^2); parameters (mean, stddev).
class BrownianPolicy final : public Policy {
 public:
  BrownianPolicy(double mean, double stddev);
  double mean() const noexcept { return mean_; }
  double stddev() const noexcept { return stddev_; }

  int num_params() const override { return 2; }
  Eigen::VectorXd params() const override;
  void set_params(const Eigen::VectorXd& theta) override;
  GaussianHead head(const Eigen::VectorXd& s) const override;
  Eigen::VectorXd score(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const override;
  Eigen::VectorXd reparam_vjp(const Eigen::VectorXd& s, const Eigen::VectorXd& z,
                              const Eigen::VectorXd& g) const override;

 private:
  double mean_;
  double stddev_;
};

/// Sum over t = 1..T of E|s_t| under the policy, from the folded-normal mean.
double brownian_value(const BrownianPolicy& policy, const BrownianSpec& spec);

/// E|X| for X ~ N(m, sd^2); sd = 0 gives |m|.
double folded_normal_mean(double m, double sd);

// ---------------------------------------------------------------------------
// Linear-quadratic regulator

inline constexpr double kDefaultLqrNoiseScale = 0.1;

struct LqrSpec {
  Eigen::MatrixXd a_mat;
  Eigen::MatrixXd b_mat;
  Eigen::MatrixXd p_mat;
  Eigen::MatrixXd q_mat;
  Eigen::MatrixXd noise_cov;
  double noise_scale = kDefaultLqrNoiseScale;
  int horizon = 20;
  /// Symmetric square root of noise_cov, filled by make_lqr.
  Eigen::MatrixXd noise_factor;

  int state_dim() const noexcept { return static_cast<int>(a_mat.rows()); }
  int action_dim() const noexcept { return static_cast<int>(b_mat.cols()); }
};

/// Validates shapes and PSD-ness and fills noise_factor.
LqrSpec make_lqr(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd p, Eigen::MatrixXd q, Eigen::MatrixXd noise_cov,
                 double noise_scale = kDefaultLqrNoiseScale, int horizon = 20);

/// 8-state, 6-action instance: Gaussian A and B scaled to unit Frobenius
/// norm; P, Q and the noise covariance are identities.
LqrSpec make_random_lqr(std::uint64_t seed, double noise_scale = kDefaultLqrNoiseScale, int horizon = 20);

/// s' = A s + B a + noise_scale * eps with eps ~ N(0, noise_cov);
/// reward -s^T P s - a^T Q a at the current (s, a).
StepResult lqr_step(const LqrSpec& spec, const Eigen::VectorXd& s, const Eigen::VectorXd& a, RngStream& noise);

class LqrEnv final : public Environment {
 public:
  explicit LqrEnv(LqrSpec spec);
  const LqrSpec& spec() const noexcept { return spec_; }

  int state_dim() const override { return spec_.state_dim(); }
  int action_dim() const override { return spec_.action_dim(); }
  int horizon() const override { return spec_.horizon; }
  /// s_1 = eps / |eps| with eps ~ N(0, I).
  Eigen::VectorXd reset(RngStream& noise) const override;
  StepResult step(const Eigen::VectorXd& s, const Eigen::VectorXd& a, RngStream& noise) const override;

 private:
  LqrSpec spec_;
};

/// pi_K(a | s) = N(K s, I). Parameters are K flattened row-major.
class LinearGaussianPolicy final : public Policy {
 public:
  explicit LinearGaussianPolicy(Eigen::MatrixXd k_mat);
  const Eigen::MatrixXd& gain() const noexcept { return k_; }

  int num_params() const override { return static_cast<int>(k_.size()); }
  Eigen::VectorXd params() const override;
  void set_params(const Eigen::VectorXd& theta) override;
  GaussianHead head(const Eigen::VectorXd& s) const override;
  Eigen::VectorXd score(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const override;
  Eigen::VectorXd reparam_vjp(const Eigen::VectorXd& s, const Eigen::VectorXd& z,
                              const Eigen::VectorXd& g) const override;

 private:
  Eigen::MatrixXd k_;
};

/// Row-major flattening helpers shared by the policy and gradient code.
Eigen::VectorXd flatten_row_major(const Eigen::MatrixXd& m);
Eigen::MatrixXd unflatten_row_major(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols);

/// Exact expected return of pi_K from the state second-moment recursion.
double lqr_value(const LqrSpec& spec, const LinearGaussianPolicy& policy);

/// Exact gradient of lqr_value with respect to K (row-major flattened).
Eigen::VectorXd lqr_value_gradient(const LqrSpec& spec, const LinearGaussianPolicy& policy);

/// Stationary gain of the infinite-horizon Riccati equation, a = K s.
Eigen::MatrixXd lqr_riccati_gain(const LqrSpec& spec);

/// Q_t(s, a) = s^T Wss s + 2 s^T Wsa a + a^T Waa a + c.
struct QuadraticStage {
  Eigen::MatrixXd w_ss;
  Eigen::MatrixXd w_sa;
  Eigen::MatrixXd w_aa;
  double constant = 0.0;

  double value(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const;
  Eigen::VectorXd action_gradient(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const;
};

/// Exact action-value functions of pi_K for t = 1..T by backward recursion.
class LqrQCritic {
 public:
  LqrQCritic(const LqrSpec& spec, const LinearGaussianPolicy& policy);

  int horizon() const noexcept { return static_cast<int>(stages_.size()); }
  /// Stage t in 1..T.
  const QuadraticStage& stage(int t) const;
  /// Expected return-to-go V_t(s) = s^T H_t s + c_t.
  double state_value(int t, const Eigen::VectorXd& s) const;

 private:
  std::vector<QuadraticStage> stages_;
  std::vector<Eigen::MatrixXd> value_quad_;
  std::vector<double> value_const_;
};

// ---------------------------------------------------------------------------
// Rollout

/// Runs one episode. `u` supplies horizon * action_dim uniforms; segment t
/// drives the action at step t. Uniforms are clamped away from 0 and 1.
Trajectory rollout(const Environment& env, const Policy& policy, std::span<const double> u, RngStream& noise);

/// One trajectory per point; trajectory i uses noise.split(i).
std::vector<Trajectory> rollout_points(const Environment& env, const Policy& policy, const PointSet& points,
                                       const RngStream& noise);

}  // namespace rqmcpg
