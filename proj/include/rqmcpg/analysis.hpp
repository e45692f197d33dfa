#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rqmcpg {

/// Mean over estimates of (estimate - truth)^2.
double mse(std::span<const double> estimates, double truth);

/// Mean over seeds of |g_hat - g|^2, the trace of the error covariance.
double grad_variance(std::span<const Eigen::VectorXd> grads, const Eigen::VectorXd& truth);

struct Alignment {
  std::vector<double> per_seed;  ///< 1 - cos(g_hat, g)
  double mean = 0.0;
};

/// Throws std::invalid_argument when any vector is zero.
Alignment grad_alignment(std::span<const Eigen::VectorXd> grads, const Eigen::VectorXd& truth);

struct Interval {
  double mean = 0.0;
  double halfwidth = 0.0;
};

/// Mean and Student-t 95% half-width from the sample standard deviation.
Interval ci95(std::span<const double> values);

/// Mean and standard error of the mean.
Interval mean_and_stderr(std::span<const double> values);

/// Least-squares slope of log2(errors) against log2(ns).
double loglog_slope(std::span<const double> ns, std::span<const double> errors);

}  // namespace rqmcpg
