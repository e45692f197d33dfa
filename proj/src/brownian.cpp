#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rqmcpg/envs.hpp"

namespace rqmcpg {

void BrownianSpec::validate() const {
  if (horizon < 1) throw std::invalid_argument("BrownianSpec: horizon must be >= 1");
  if (!(step_scale > 0.0)) throw std::invalid_argument("BrownianSpec: step_scale must be > 0");
}

StepResult brownian_step(const BrownianSpec& spec, double s, double a) {
  const double next = s + spec.step_scale * a;
  return {Eigen::VectorXd::Constant(1, next), std::abs(next)};
}

BrownianEnv::BrownianEnv(BrownianSpec spec) : spec_(spec) { spec_.validate(); }

Eigen::VectorXd BrownianEnv::reset(RngStream&) const { return Eigen::VectorXd::Constant(1, spec_.init_state); }

StepResult BrownianEnv::step(const Eigen::VectorXd& s, const Eigen::VectorXd& a, RngStream&) const {
  if (s.size() != 1 || a.size() != 1) throw std::invalid_argument("BrownianEnv::step: expected scalar state and action");
  return brownian_step(spec_, s[0], a[0]);
}

BrownianPolicy::BrownianPolicy(double mean, double stddev) : mean_(mean), stddev_(stddev) {
  if (!(stddev > 0.0)) throw std::invalid_argument("BrownianPolicy: stddev must be > 0");
}

Eigen::VectorXd BrownianPolicy::params() const { return Eigen::Vector2d(mean_, stddev_); }

void BrownianPolicy::set_params(const Eigen::VectorXd& theta) {
  if (theta.size() != 2) throw std::invalid_argument("BrownianPolicy: expected 2 parameters");
  if (!(theta[1] > 0.0)) throw std::invalid_argument("BrownianPolicy: stddev must be > 0");
  mean_ = theta[0];
  stddev_ = theta[1];
}

GaussianHead BrownianPolicy::head(const Eigen::VectorXd&) const {
  return GaussianHead(Eigen::VectorXd::Constant(1, mean_), Eigen::VectorXd::Constant(1, stddev_));
}

Eigen::VectorXd BrownianPolicy::score(const Eigen::VectorXd&, const Eigen::VectorXd& a) const {
  if (a.size() != 1) throw std::invalid_argument("BrownianPolicy::score: expected scalar action");
  const double d = a[0] - mean_;
  const double var = stddev_ * stddev_;
  return Eigen::Vector2d(d / var, d * d / (var * stddev_) - 1.0 / stddev_);
}

Eigen::VectorXd BrownianPolicy::reparam_vjp(const Eigen::VectorXd&, const Eigen::VectorXd& z,
                                            const Eigen::VectorXd& g) const {
  if (z.size() != 1 || g.size() != 1) throw std::invalid_argument("BrownianPolicy::reparam_vjp: expected scalars");
  return Eigen::Vector2d(g[0], g[0] * z[0]);
}

double folded_normal_mean(double m, double sd) {
  if (sd <= 0.0) return std::abs(m);
  return sd * std::sqrt(2.0 / std::numbers::pi) * std::exp(-m * m / (2.0 * sd * sd)) +
         m * (1.0 - 2.0 * normal_cdf(-m / sd));
}

double brownian_value(const BrownianPolicy& policy, const BrownianSpec& spec) {
  spec.validate();
  double total = 0.0;
  for (int t = 1; t <= spec.horizon; ++t) {
    const double m = spec.init_state + spec.step_scale * t * policy.mean();
    const double sd = spec.step_scale * std::sqrt(static_cast<double>(t)) * policy.stddev();
    total += folded_normal_mean(m, sd);
  }
  return total;
}

}  // namespace rqmcpg
