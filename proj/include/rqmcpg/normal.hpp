#pragma once

#include <span>

#include <Eigen/Dense>

namespace rqmcpg {

/// Standard normal CDF, accurate to a few ulps via erfc.
double normal_cdf(double x) noexcept;

/// Standard normal quantile F^{-1}(u). Throws std::domain_error unless 0 < u < 1.
double inv_normal_cdf(double u);

/// Clamps a uniform into [2^-32, 1 - 2^-32] so the quantile stays finite on
/// raw net points at the origin.
double clamp_uniform(double u) noexcept;

/// Diagonal Gaussian action distribution N(mean, diag(stddev^2)).
struct GaussianHead {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;

  /// Throws std::invalid_argument on shape mismatch or non-positive stddev.
  GaussianHead(Eigen::VectorXd mean, Eigen::VectorXd stddev);
};

/// mean + stddev * F^{-1}(u), element-wise.
Eigen::VectorXd reparam_action(const GaussianHead& head, std::span<const double> u);

}  // namespace rqmcpg
