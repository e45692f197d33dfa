#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rqmcpg/envs.hpp"
#include "rqmcpg/lowdisc.hpp"
#include "rqmcpg/rng.hpp"

namespace rqmcpg {

enum class SortNorm { l1, l2, linf };

double state_norm(const Eigen::VectorXd& s, SortNorm norm);

struct ArqmcConfig {
  std::size_t chains = 1;  ///< M, a power of two.
  SortNorm sort_norm = SortNorm::l1;
  Randomization randomization = Randomization::lms_shift;

  void validate() const;
};

/// For each chain, the index of the point assigned to it: chains ranked by
/// state norm (ties by chain index) receive points ranked by their first
/// coordinate.
std::vector<std::size_t> assign_points_to_chains(const std::vector<Eigen::VectorXd>& states, const PointSet& points,
                                                 SortNorm norm);

/// Advances M chains in lockstep. Each step draws a fresh randomized net of M
/// points in 1 + dim(A) dimensions; the coordinates after the first drive the
/// action of the chain the point is assigned to. Dynamics noise stays per-chain.
std::vector<Trajectory> arqmc_rollout(const Environment& env, const Policy& policy, const ArqmcConfig& cfg,
                                      const RngStream& rng);

}  // namespace rqmcpg
