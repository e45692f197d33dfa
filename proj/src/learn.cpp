#include "rqmcpg/learn.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace rqmcpg {

void SgdConfig::validate() const {
  if (!(lr >= 0.0)) throw std::invalid_argument("SgdConfig: lr must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("SgdConfig: momentum must lie in [0, 1)");
}

void sgd_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, SgdState& state, const SgdConfig& cfg) {
  if (grad.size() != params.size()) throw std::invalid_argument("sgd_step: gradient shape mismatch");
  if (state.velocity.size() == 0) state.velocity = Eigen::VectorXd::Zero(params.size());
  if (state.velocity.size() != params.size()) throw std::invalid_argument("sgd_step: state shape mismatch");
  state.velocity = cfg.momentum * state.velocity + grad;
  params += cfg.lr * state.velocity;
}

void AsgdConfig::validate() const {
  if (!(lr >= 0.0)) throw std::invalid_argument("AsgdConfig: lr must be >= 0");
  if (!(kappa >= 1.0)) throw std::invalid_argument("AsgdConfig: kappa must be >= 1");
  if (!(xi >= 1.0 && xi <= std::sqrt(kappa))) throw std::invalid_argument("AsgdConfig: xi must lie in [1, sqrt(kappa)]");
  if (!(small_const > 0.0 && small_const <= 1.0)) throw std::invalid_argument("AsgdConfig: small_const must lie in (0, 1]");
}

void asgd_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AsgdState& state, const AsgdConfig& cfg) {
  cfg.validate();
  if (grad.size() != params.size()) throw std::invalid_argument("asgd_step: gradient shape mismatch");
  if (state.buffer.size() == 0) state.buffer = params;
  if (state.buffer.size() != params.size()) throw std::invalid_argument("asgd_step: state shape mismatch");

  const double c = cfg.small_const;
  const double long_lr = cfg.lr * cfg.kappa / c;
  const double alpha = 1.0 - c * c * cfg.xi / cfg.kappa;
  const double beta = 1.0 - alpha;
  const double zeta = c / (c + beta);

  // buffer <- beta * ((1/beta - 1) * buffer - long_lr * grad + params)
  state.buffer = beta * ((1.0 / beta - 1.0) * state.buffer - long_lr * grad + params);
  params = zeta * (params - cfg.lr * grad) + (1.0 - zeta) * state.buffer;
}

Eigen::MatrixXd initial_gain(const LqrSpec& spec, std::uint64_t seed, double init_scale) {
  RngStream rng = RngStream(seed).split(0x6B1D);
  Eigen::MatrixXd k(spec.action_dim(), spec.state_dim());
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    for (Eigen::Index j = 0; j < k.cols(); ++j) k(i, j) = init_scale * rng.normal();
  }
  return k;
}

std::vector<TrainRecord> vpg_train(const LqrSpec& spec, const TrainConfig& cfg) {
  if (cfg.iterations < 0) throw std::invalid_argument("vpg_train: iterations must be >= 0");
  if (cfg.trajectories_per_update < 1) throw std::invalid_argument("vpg_train: need at least one trajectory per update");
  std::visit([](const auto& o) { o.validate(); }, cfg.optimizer);
  if (cfg.cv) cfg.cv->validate();

  const LqrEnv env(spec);
  LinearGaussianPolicy policy(initial_gain(spec, cfg.seed, cfg.init_scale));
  Eigen::VectorXd theta = policy.params();
  SgdState sgd;
  AsgdState asgd;
  const RngStream root = RngStream(cfg.seed).split(0x7EA1);

  const auto start = std::chrono::steady_clock::now();
  auto record = [&](int iteration) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return TrainRecord{iteration,
                       static_cast<std::uint64_t>(iteration) * cfg.trajectories_per_update * spec.horizon,
                       lqr_value(spec, policy),
                       elapsed.count(),
                       cfg.sampler.sampler,
                       cfg.seed};
  };

  std::vector<TrainRecord> records;
  records.reserve(cfg.iterations + 1);
  records.push_back(record(0));
  for (int it = 1; it <= cfg.iterations; ++it) {
    const auto trajs = collect_trajectories(env, policy, cfg.sampler, cfg.trajectories_per_update,
                                            root.split(static_cast<std::uint64_t>(it)));
    std::optional<ControlVariate> cv;
    if (cfg.cv) cv = ControlVariate{*cfg.cv, fit_linear_baseline(trajs)};
    const Eigen::VectorXd grad = score_gradient(trajs, policy, cv).grad;
    if (const auto* sgd_cfg = std::get_if<SgdConfig>(&cfg.optimizer)) {
      sgd_step(theta, grad, sgd, *sgd_cfg);
    } else {
      asgd_step(theta, -grad, asgd, std::get<AsgdConfig>(cfg.optimizer));
    }
    policy.set_params(theta);
    records.push_back(record(it));
  }
  return records;
}

}  // namespace rqmcpg
