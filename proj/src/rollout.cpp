#include <stdexcept>

#include "rqmcpg/envs.hpp"

namespace rqmcpg {

double Trajectory::total_reward() const noexcept {
  double total = 0.0;
  for (double r : rewards) total += r;
  return total;
}

std::vector<double> Trajectory::rewards_to_go() const {
  std::vector<double> out(rewards.size());
  double acc = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    acc += rewards[t];
    out[t] = acc;
  }
  return out;
}

Trajectory rollout(const Environment& env, const Policy& policy, std::span<const double> u, RngStream& noise) {
  const int horizon = env.horizon();
  const int da = env.action_dim();
  if (u.size() != static_cast<std::size_t>(horizon) * da) {
    throw std::invalid_argument("rollout: expected horizon * action_dim uniforms");
  }
  Trajectory traj;
  traj.states.reserve(horizon + 1);
  traj.actions.reserve(horizon);
  traj.rewards.reserve(horizon);
  traj.uniforms.assign(u.begin(), u.end());

  std::vector<double> segment(da);
  traj.states.push_back(env.reset(noise));
  for (int t = 0; t < horizon; ++t) {
    for (int i = 0; i < da; ++i) segment[i] = clamp_uniform(u[static_cast<std::size_t>(t) * da + i]);
    Eigen::VectorXd a = reparam_action(policy.head(traj.states.back()), segment);
    StepResult step = env.step(traj.states.back(), a, noise);
    traj.actions.push_back(std::move(a));
    traj.rewards.push_back(step.reward);
    traj.states.push_back(std::move(step.next_state));
  }
  return traj;
}

std::vector<Trajectory> rollout_points(const Environment& env, const Policy& policy, const PointSet& points,
                                       const RngStream& noise) {
  std::vector<Trajectory> out;
  out.reserve(points.size());
  std::vector<double> u(points.dims());
  for (std::size_t i = 0; i < points.size(); ++i) {
    points.row(i, u);
    RngStream stream = noise.split(i);
    out.push_back(rollout(env, policy, u, stream));
  }
  return out;
}

}  // namespace rqmcpg
