#include "rqmcpg/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace rqmcpg {

Eigen::VectorXd Critic::action_gradient(const Eigen::VectorXd&, const Eigen::VectorXd&) const {
  throw CriticLacksGradient("critic does not expose an action gradient");
}

void GaeConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("GaeConfig: gamma must lie in [0, 1]");
  if (!(lam >= 0.0 && lam <= 1.0)) throw std::invalid_argument("GaeConfig: lam must lie in [0, 1]");
}

ValueEstimate value_by_returns(const std::vector<Trajectory>& trajs, PointKind kind, std::optional<std::uint64_t> seed) {
  if (trajs.empty()) throw std::invalid_argument("value_by_returns: no trajectories");
  const int horizon = trajs.front().horizon();
  double sum = 0.0;
  for (const auto& tr : trajs) {
    if (tr.horizon() != horizon) throw std::invalid_argument("value_by_returns: unequal horizons");
    sum += tr.total_reward();
  }
  return {sum / static_cast<double>(trajs.size()), trajs.size(), kind, seed};
}

namespace {

void check_pointsets(const std::vector<Eigen::VectorXd>& states, const Policy& policy,
                     const std::vector<PointSet>& pointsets, const char* who) {
  if (states.empty()) throw std::invalid_argument(std::string(who) + ": no states");
  if (pointsets.size() != states.size()) throw std::invalid_argument(std::string(who) + ": one point set per state");
  const auto da = policy.head(states.front()).mean.size();
  for (const auto& p : pointsets) {
    if (p.dims() != da) throw std::invalid_argument(std::string(who) + ": point set dimension must equal dim(A)");
  }
}

// Visits every (state, point) pair with the standard-normal draw z and the action a.
template <class Fn>
void for_each_action(const std::vector<Eigen::VectorXd>& states, const Policy& policy,
                     const std::vector<PointSet>& pointsets, Fn&& fn) {
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& s = states[k];
    const GaussianHead head = policy.head(s);
    const PointSet& pts = pointsets[k];
    Eigen::VectorXd z(pts.dims());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (int j = 0; j < pts.dims(); ++j) z[j] = inv_normal_cdf(clamp_uniform(pts(i, j)));
      const Eigen::VectorXd a = head.mean + head.stddev.cwiseProduct(z);
      fn(k, s, z, a, 1.0 / static_cast<double>(pts.size()));
    }
  }
}

}  // namespace

ValueEstimate value_by_critic(const std::vector<Eigen::VectorXd>& states, const Critic& critic, const Policy& policy,
                              const std::vector<PointSet>& pointsets) {
  check_pointsets(states, policy, pointsets, "value_by_critic");
  double total = 0.0;
  std::size_t n = 0;
  for_each_action(states, policy, pointsets,
                  [&](std::size_t, const Eigen::VectorXd& s, const Eigen::VectorXd&, const Eigen::VectorXd& a,
                      double w) {
                    total += w * critic.value(s, a);
                    ++n;
                  });
  return {total / static_cast<double>(states.size()), n, pointsets.front().kind(), pointsets.front().seed()};
}

GradientEstimate score_gradient(const std::vector<Trajectory>& trajs, const Policy& policy,
                                const std::optional<ControlVariate>& cv) {
  if (trajs.empty()) throw std::invalid_argument("score_gradient: no trajectories");
  if (cv) cv->gae.validate();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(policy.num_params());
  for (const auto& tr : trajs) {
    if (tr.states.size() != tr.rewards.size() + 1 || tr.actions.size() != tr.rewards.size()) {
      throw std::invalid_argument("score_gradient: malformed trajectory");
    }
    const std::vector<double> weights = cv ? gae_advantages(tr, cv->baseline, cv->gae) : tr.rewards_to_go();
    for (int t = 0; t < tr.horizon(); ++t) {
      if (weights[t] == 0.0) continue;
      grad += weights[t] * policy.score(tr.states[t], tr.actions[t]);
    }
  }
  grad /= static_cast<double>(trajs.size());
  return {std::move(grad), trajs.size(), PointKind::mc};
}

GradientEstimate plugin_gradient(const std::vector<Eigen::VectorXd>& states, const Critic& critic, const Policy& policy,
                                 const std::vector<PointSet>& pointsets) {
  check_pointsets(states, policy, pointsets, "plugin_gradient");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(policy.num_params());
  std::size_t n = 0;
  for_each_action(states, policy, pointsets,
                  [&](std::size_t, const Eigen::VectorXd& s, const Eigen::VectorXd&, const Eigen::VectorXd& a,
                      double w) {
                    grad += (w * critic.value(s, a)) * policy.score(s, a);
                    ++n;
                  });
  grad /= static_cast<double>(states.size());
  return {std::move(grad), n, pointsets.front().kind()};
}

GradientEstimate reparam_gradient(const std::vector<Eigen::VectorXd>& states, const Critic& critic,
                                  const Policy& policy, const std::vector<PointSet>& pointsets) {
  if (!critic.has_action_gradient()) throw CriticLacksGradient("reparam_gradient: critic lacks an action gradient");
  check_pointsets(states, policy, pointsets, "reparam_gradient");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(policy.num_params());
  std::size_t n = 0;
  for_each_action(states, policy, pointsets,
                  [&](std::size_t, const Eigen::VectorXd& s, const Eigen::VectorXd& z, const Eigen::VectorXd& a,
                      double w) {
                    grad += w * policy.reparam_vjp(s, z, critic.action_gradient(s, a));
                    ++n;
                  });
  grad /= static_cast<double>(states.size());
  return {std::move(grad), n, pointsets.front().kind()};
}

LinearBaseline fit_linear_baseline(const std::vector<Eigen::VectorXd>& states, const std::vector<double>& returns) {
  if (states.empty() || states.size() != returns.size()) {
    throw std::invalid_argument("fit_linear_baseline: states and returns must be nonempty and equal length");
  }
  const Eigen::Index dim = states.front().size();
  if (states.size() < static_cast<std::size_t>(dim) + 1) {
    throw std::invalid_argument("fit_linear_baseline: need at least state_dim + 1 samples");
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(states.size()), dim + 1);
  Eigen::VectorXd y(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (states[i].size() != dim) throw std::invalid_argument("fit_linear_baseline: inconsistent state dimension");
    x.row(i).head(dim) = states[i].transpose();
    x(i, dim) = 1.0;
    y[i] = returns[i];
  }
  Eigen::MatrixXd gram = x.transpose() * x;
  gram.diagonal().array() += 1e-8;
  const Eigen::VectorXd coef = gram.ldlt().solve(x.transpose() * y);
  return {coef.head(dim), coef[dim]};
}

LinearBaseline fit_linear_baseline(const std::vector<Trajectory>& trajs) {
  std::vector<Eigen::VectorXd> states;
  std::vector<double> returns;
  for (const auto& tr : trajs) {
    const auto togo = tr.rewards_to_go();
    for (int t = 0; t < tr.horizon(); ++t) {
      states.push_back(tr.states[t]);
      returns.push_back(togo[t]);
    }
  }
  return fit_linear_baseline(states, returns);
}

std::vector<double> gae_advantages(const Trajectory& traj, const LinearBaseline& baseline, const GaeConfig& cfg) {
  cfg.validate();
  const int horizon = traj.horizon();
  std::vector<double> adv(horizon);
  double next_adv = 0.0;
  double next_value = 0.0;
  for (int t = horizon - 1; t >= 0; --t) {
    const double value = baseline(traj.states[t]);
    const double delta = traj.rewards[t] + cfg.gamma * next_value - value;
    adv[t] = delta + cfg.gamma * cfg.lam * next_adv;
    next_adv = adv[t];
    next_value = value;
  }
  return adv;
}

}  // namespace rqmcpg
