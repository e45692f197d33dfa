#include <cmath>
#include <stdexcept>
#include <utility>

#include "rqmcpg/envs.hpp"

namespace rqmcpg {

namespace {

void require_psd(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(name) + " must be square");
  if (!m.isApprox(m.transpose(), 1e-12)) throw std::invalid_argument(std::string(name) + " must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff())) {
    throw std::invalid_argument(std::string(name) + " must be positive semi-definite");
  }
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

}  // namespace

LqrSpec make_lqr(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd p, Eigen::MatrixXd q, Eigen::MatrixXd noise_cov,
                 double noise_scale, int horizon) {
  if (a.rows() != a.cols()) throw std::invalid_argument("make_lqr: A must be square");
  if (b.rows() != a.rows()) throw std::invalid_argument("make_lqr: B rows must match state dimension");
  if (p.rows() != a.rows() || noise_cov.rows() != a.rows()) {
    throw std::invalid_argument("make_lqr: P and noise covariance must match state dimension");
  }
  if (q.rows() != b.cols()) throw std::invalid_argument("make_lqr: Q must match action dimension");
  require_psd(p, "P");
  require_psd(q, "Q");
  require_psd(noise_cov, "noise covariance");
  if (horizon < 1) throw std::invalid_argument("make_lqr: horizon must be >= 1");
  if (!(noise_scale >= 0.0)) throw std::invalid_argument("make_lqr: noise_scale must be >= 0");

  LqrSpec spec;
  spec.noise_factor = psd_sqrt(noise_cov);
  spec.a_mat = std::move(a);
  spec.b_mat = std::move(b);
  spec.p_mat = std::move(p);
  spec.q_mat = std::move(q);
  spec.noise_cov = std::move(noise_cov);
  spec.noise_scale = noise_scale;
  spec.horizon = horizon;
  return spec;
}

LqrSpec make_random_lqr(std::uint64_t seed, double noise_scale, int horizon) {
  constexpr int n = 8;
  constexpr int m = 6;
  RngStream rng(seed);
  Eigen::MatrixXd a = gaussian_matrix(n, n, rng);
  Eigen::MatrixXd b = gaussian_matrix(n, m, rng);
  a /= a.norm();
  b /= b.norm();
  return make_lqr(std::move(a), std::move(b), Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(m, m),
                  Eigen::MatrixXd::Identity(n, n), noise_scale, horizon);
}

StepResult lqr_step(const LqrSpec& spec, const Eigen::VectorXd& s, const Eigen::VectorXd& a, RngStream& noise) {
  if (s.size() != spec.state_dim() || a.size() != spec.action_dim()) {
    throw std::invalid_argument("lqr_step: state or action dimension mismatch");
  }
  const double reward = -s.dot(spec.p_mat * s) - a.dot(spec.q_mat * a);
  Eigen::VectorXd next = spec.a_mat * s + spec.b_mat * a;
  Eigen::VectorXd eps(spec.state_dim());
  for (Eigen::Index i = 0; i < eps.size(); ++i) eps[i] = noise.normal();
  if (spec.noise_scale != 0.0) next.noalias() += spec.noise_scale * (spec.noise_factor * eps);
  return {std::move(next), reward};
}

LqrEnv::LqrEnv(LqrSpec spec) : spec_(std::move(spec)) {
  if (spec_.noise_factor.rows() != spec_.state_dim()) {
    throw std::invalid_argument("LqrEnv: spec must be built with make_lqr");
  }
}

Eigen::VectorXd LqrEnv::reset(RngStream& noise) const {
  Eigen::VectorXd eps(spec_.state_dim());
  for (Eigen::Index i = 0; i < eps.size(); ++i) eps[i] = noise.normal();
  return eps / eps.norm();
}

StepResult LqrEnv::step(const Eigen::VectorXd& s, const Eigen::VectorXd& a, RngStream& noise) const {
  return lqr_step(spec_, s, a, noise);
}

Eigen::VectorXd flatten_row_major(const Eigen::MatrixXd& m) {
  Eigen::VectorXd v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  }
  return v;
}

Eigen::MatrixXd unflatten_row_major(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unflatten_row_major: size mismatch");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  }
  return m;
}

LinearGaussianPolicy::LinearGaussianPolicy(Eigen::MatrixXd k_mat) : k_(std::move(k_mat)) {}

Eigen::VectorXd LinearGaussianPolicy::params() const { return flatten_row_major(k_); }

void LinearGaussianPolicy::set_params(const Eigen::VectorXd& theta) { k_ = unflatten_row_major(theta, k_.rows(), k_.cols()); }

GaussianHead LinearGaussianPolicy::head(const Eigen::VectorXd& s) const {
  if (s.size() != k_.cols()) throw std::invalid_argument("LinearGaussianPolicy: state dimension mismatch");
  return GaussianHead(k_ * s, Eigen::VectorXd::Ones(k_.rows()));
}

Eigen::VectorXd LinearGaussianPolicy::score(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const {
  if (s.size() != k_.cols() || a.size() != k_.rows()) {
    throw std::invalid_argument("LinearGaussianPolicy::score: dimension mismatch");
  }
  return flatten_row_major((a - k_ * s) * s.transpose());
}

Eigen::VectorXd LinearGaussianPolicy::reparam_vjp(const Eigen::VectorXd& s, const Eigen::VectorXd&,
                                                  const Eigen::VectorXd& g) const {
  if (s.size() != k_.cols() || g.size() != k_.rows()) {
    throw std::invalid_argument("LinearGaussianPolicy::reparam_vjp: dimension mismatch");
  }
  return flatten_row_major(g * s.transpose());
}

namespace {

void require_compatible(const LqrSpec& spec, const LinearGaussianPolicy& policy) {
  if (policy.gain().rows() != spec.action_dim() || policy.gain().cols() != spec.state_dim()) {
    throw std::invalid_argument("LQR policy gain shape does not match the spec");
  }
}

}  // namespace

double lqr_value(const LqrSpec& spec, const LinearGaussianPolicy& policy) {
  require_compatible(spec, policy);
  const auto& k = policy.gain();
  const int n = spec.state_dim();
  const Eigen::MatrixXd closed = spec.a_mat + spec.b_mat * k;
  const Eigen::MatrixXd drive =
      spec.b_mat * spec.b_mat.transpose() + spec.noise_scale * spec.noise_scale * spec.noise_cov;
  const double action_noise_cost = spec.q_mat.trace();
  // A normalized Gaussian vector is uniform on the sphere: E[s s'] = I / n.
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(n, n) / n;
  double value = 0.0;
  for (int t = 1; t <= spec.horizon; ++t) {
    value -= (spec.p_mat * sigma).trace() + (spec.q_mat * (k * sigma * k.transpose())).trace() + action_noise_cost;
    sigma = closed * sigma * closed.transpose() + drive;
  }
  return value;
}

Eigen::VectorXd lqr_value_gradient(const LqrSpec& spec, const LinearGaussianPolicy& policy) {
  require_compatible(spec, policy);
  const auto& k = policy.gain();
  const int n = spec.state_dim();
  const Eigen::MatrixXd closed = spec.a_mat + spec.b_mat * k;
  const Eigen::MatrixXd drive =
      spec.b_mat * spec.b_mat.transpose() + spec.noise_scale * spec.noise_scale * spec.noise_cov;
  std::vector<Eigen::MatrixXd> sigmas{Eigen::MatrixXd::Identity(n, n) / n};
  for (int t = 1; t < spec.horizon; ++t) sigmas.push_back(closed * sigmas.back() * closed.transpose() + drive);

  // Adjoint of the moment recursion: lambda_t = dV / dSigma_t.
  const Eigen::MatrixXd stage_cost = -(spec.p_mat + k.transpose() * spec.q_mat * k);
  Eigen::MatrixXd lambda_next = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(k.rows(), k.cols());
  for (int t = spec.horizon - 1; t >= 0; --t) {
    const auto& sigma = sigmas[t];
    grad += -2.0 * spec.q_mat * k * sigma + 2.0 * spec.b_mat.transpose() * lambda_next * closed * sigma;
    lambda_next = stage_cost + closed.transpose() * lambda_next * closed;
  }
  return flatten_row_major(grad);
}

Eigen::MatrixXd lqr_riccati_gain(const LqrSpec& spec) {
  const auto& a = spec.a_mat;
  const auto& b = spec.b_mat;
  Eigen::MatrixXd x = spec.p_mat;
  Eigen::MatrixXd gain = Eigen::MatrixXd::Zero(spec.action_dim(), spec.state_dim());
  for (int iter = 0; iter < 100000; ++iter) {
    const Eigen::MatrixXd s = spec.q_mat + b.transpose() * x * b;
    gain = -s.ldlt().solve(b.transpose() * x * a);
    const Eigen::MatrixXd next = spec.p_mat + a.transpose() * x * (a + b * gain);
    const double change = (next - x).norm();
    x = 0.5 * (next + next.transpose());
    if (change < 1e-14 * std::max(1.0, x.norm())) break;
  }
  return gain;
}

double QuadraticStage::value(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const {
  return s.dot(w_ss * s) + 2.0 * s.dot(w_sa * a) + a.dot(w_aa * a) + constant;
}

Eigen::VectorXd QuadraticStage::action_gradient(const Eigen::VectorXd& s, const Eigen::VectorXd& a) const {
  return 2.0 * (w_sa.transpose() * s + w_aa * a);
}

LqrQCritic::LqrQCritic(const LqrSpec& spec, const LinearGaussianPolicy& policy) {
  require_compatible(spec, policy);
  const auto& k = policy.gain();
  const int n = spec.state_dim();
  const int horizon = spec.horizon;
  stages_.resize(horizon);
  value_quad_.resize(horizon + 1);
  value_const_.resize(horizon + 1);
  value_quad_[horizon] = Eigen::MatrixXd::Zero(n, n);
  value_const_[horizon] = 0.0;
  const Eigen::MatrixXd noise = spec.noise_scale * spec.noise_scale * spec.noise_cov;
  // Index t-1 holds stage t; value_quad_[t] is H_{t+1}.
  for (int t = horizon - 1; t >= 0; --t) {
    const Eigen::MatrixXd& h = value_quad_[t + 1];
    QuadraticStage& q = stages_[t];
    q.w_ss = -spec.p_mat + spec.a_mat.transpose() * h * spec.a_mat;
    q.w_sa = spec.a_mat.transpose() * h * spec.b_mat;
    q.w_aa = -spec.q_mat + spec.b_mat.transpose() * h * spec.b_mat;
    q.constant = (h * noise).trace() + value_const_[t + 1];
    Eigen::MatrixXd hq = q.w_ss + q.w_sa * k + k.transpose() * q.w_sa.transpose() + k.transpose() * q.w_aa * k;
    value_quad_[t] = 0.5 * (hq + hq.transpose());
    value_const_[t] = q.constant + q.w_aa.trace();
  }
}

const QuadraticStage& LqrQCritic::stage(int t) const {
  if (t < 1 || t > horizon()) throw std::out_of_range("LqrQCritic::stage: t outside 1..T");
  return stages_[t - 1];
}

double LqrQCritic::state_value(int t, const Eigen::VectorXd& s) const {
  if (t < 1 || t > horizon()) throw std::out_of_range("LqrQCritic::state_value: t outside 1..T");
  return s.dot(value_quad_[t - 1] * s) + value_const_[t - 1];
}

}  // namespace rqmcpg
