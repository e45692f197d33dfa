#include "rqmcpg/sampling.hpp"

#include <bit>
#include <stdexcept>

namespace rqmcpg {

std::string_view to_string(Sampler s) noexcept {
  switch (s) {
    case Sampler::mc: return "mc";
    case Sampler::rqmc: return "rqmc";
    case Sampler::arqmc: return "arqmc";
  }
  return "?";
}

std::optional<Sampler> parse_sampler(std::string_view name) noexcept {
  if (name == "mc") return Sampler::mc;
  if (name == "rqmc") return Sampler::rqmc;
  if (name == "arqmc") return Sampler::arqmc;
  return std::nullopt;
}

std::optional<Randomization> parse_randomization(std::string_view name) noexcept {
  if (name == "lms-shift") return Randomization::lms_shift;
  if (name == "owen") return Randomization::owen;
  return std::nullopt;
}

PointKind point_kind(const SamplerConfig& cfg) noexcept {
  if (cfg.sampler == Sampler::mc) return PointKind::mc;
  return cfg.randomization == Randomization::owen ? PointKind::net_owen : PointKind::net_lms_shift;
}

PointSet draw_uniform_rows(const SamplerConfig& cfg, std::size_t n, int dims, RngStream& rng) {
  switch (cfg.sampler) {
    case Sampler::mc: return mc_uniform(n, dims, rng);
    case Sampler::rqmc:
      if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("rqmc sampling needs a power-of-two count");
      return randomized_sobol(dims, std::countr_zero(n), cfg.randomization, rng);
    case Sampler::arqmc: break;
  }
  throw std::invalid_argument("draw_uniform_rows: arqmc has no per-trajectory uniform rows");
}

std::vector<Trajectory> collect_trajectories(const Environment& env, const Policy& policy, const SamplerConfig& cfg,
                                             std::size_t n, const RngStream& rng) {
  if (cfg.sampler == Sampler::arqmc) {
    return arqmc_rollout(env, policy, ArqmcConfig{n, cfg.sort_norm, cfg.randomization}, rng);
  }
  RngStream point_rng = rng.split(0);
  const PointSet rows = draw_uniform_rows(cfg, n, env.horizon() * env.action_dim(), point_rng);
  return rollout_points(env, policy, rows, rng.split(1));
}

}  // namespace rqmcpg
