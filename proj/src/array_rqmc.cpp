#include "rqmcpg/array_rqmc.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace rqmcpg {

double state_norm(const Eigen::VectorXd& s, SortNorm norm) {
  switch (norm) {
    case SortNorm::l1: return s.lpNorm<1>();
    case SortNorm::l2: return s.norm();
    case SortNorm::linf: return s.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

void ArqmcConfig::validate() const {
  if (chains == 0 || !std::has_single_bit(chains)) throw std::invalid_argument("ArqmcConfig: chains must be a power of two");
}

std::vector<std::size_t> assign_points_to_chains(const std::vector<Eigen::VectorXd>& states, const PointSet& points,
                                                 SortNorm norm) {
  const std::size_t m = states.size();
  if (points.size() != m) throw std::invalid_argument("assign_points_to_chains: need one point per chain");
  std::vector<double> norms(m);
  for (std::size_t c = 0; c < m; ++c) norms[c] = state_norm(states[c], norm);

  std::vector<std::size_t> chain_rank(m);
  std::iota(chain_rank.begin(), chain_rank.end(), 0);
  std::stable_sort(chain_rank.begin(), chain_rank.end(), [&](auto x, auto y) { return norms[x] < norms[y]; });

  std::vector<std::size_t> point_rank(m);
  std::iota(point_rank.begin(), point_rank.end(), 0);
  std::stable_sort(point_rank.begin(), point_rank.end(),
                   [&](auto x, auto y) { return points.raw(x, 0) < points.raw(y, 0); });

  std::vector<std::size_t> assignment(m);
  for (std::size_t r = 0; r < m; ++r) assignment[chain_rank[r]] = point_rank[r];
  return assignment;
}

std::vector<Trajectory> arqmc_rollout(const Environment& env, const Policy& policy, const ArqmcConfig& cfg,
                                      const RngStream& rng) {
  cfg.validate();
  const std::size_t m = cfg.chains;
  const int log2m = std::countr_zero(m);
  const int da = env.action_dim();
  const int horizon = env.horizon();
  const RngStream point_root = rng.split(0);
  const RngStream noise_root = rng.split(1);

  std::vector<RngStream> noise;
  noise.reserve(m);
  std::vector<Trajectory> trajs(m);
  for (std::size_t c = 0; c < m; ++c) {
    noise.push_back(noise_root.split(c));
    auto& tr = trajs[c];
    tr.states.reserve(horizon + 1);
    tr.uniforms.reserve(static_cast<std::size_t>(horizon) * da);
    tr.states.push_back(env.reset(noise[c]));
  }

  std::vector<Eigen::VectorXd> current(m);
  std::vector<double> u(da);
  for (int t = 0; t < horizon; ++t) {
    RngStream point_rng = point_root.split(static_cast<std::uint64_t>(t));
    const PointSet points = randomized_sobol(1 + da, log2m, cfg.randomization, point_rng);
    for (std::size_t c = 0; c < m; ++c) current[c] = trajs[c].states.back();
    const auto assignment = assign_points_to_chains(current, points, cfg.sort_norm);
    for (std::size_t c = 0; c < m; ++c) {
      auto& tr = trajs[c];
      for (int j = 0; j < da; ++j) {
        u[j] = points(assignment[c], j + 1);
        tr.uniforms.push_back(u[j]);
        u[j] = clamp_uniform(u[j]);
      }
      Eigen::VectorXd a = reparam_action(policy.head(current[c]), u);
      StepResult step = env.step(current[c], a, noise[c]);
      tr.actions.push_back(std::move(a));
      tr.rewards.push_back(step.reward);
      tr.states.push_back(std::move(step.next_state));
    }
  }
  return trajs;
}

}  // namespace rqmcpg
