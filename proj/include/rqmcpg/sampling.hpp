#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "rqmcpg/array_rqmc.hpp"
#include "rqmcpg/envs.hpp"
#include "rqmcpg/lowdisc.hpp"

namespace rqmcpg {

enum class Sampler { mc, rqmc, arqmc };

std::string_view to_string(Sampler s) noexcept;
std::optional<Sampler> parse_sampler(std::string_view name) noexcept;
std::optional<Randomization> parse_randomization(std::string_view name) noexcept;

struct SamplerConfig {
  Sampler sampler = Sampler::mc;
  Randomization randomization = Randomization::lms_shift;
  SortNorm sort_norm = SortNorm::l1;
};

PointKind point_kind(const SamplerConfig& cfg) noexcept;

/// Uniform rows for n trajectories of the environment (dimension
/// horizon * action_dim). Only mc and rqmc; rqmc requires n to be a power of two.
PointSet draw_uniform_rows(const SamplerConfig& cfg, std::size_t n, int dims, RngStream& rng);

/// Collects n trajectories. Every sampler shares this path and differs only in
/// where the action uniforms come from.
std::vector<Trajectory> collect_trajectories(const Environment& env, const Policy& policy, const SamplerConfig& cfg,
                                             std::size_t n, const RngStream& rng);

}  // namespace rqmcpg
