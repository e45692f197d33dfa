#include "rqmcpg/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace rqmcpg {

namespace {

// Acklam's rational approximation, relative error ~1.15e-9 before refinement.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                         1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                         6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                         -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                         3.754408661907416e+00};

double acklam(double p) {
  constexpr double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

// Lower half only: p in (0, 0.5]. The upper half is mirrored so that
// F^{-1}(1-u) == -F^{-1}(u) whenever 1-u is exact.
double lower_quantile(double p) {
  double x = acklam(p);
  // One Halley step against the erfc-based CDF.
  const double e = normal_cdf(x) - p;
  const double step = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= step / (1.0 + 0.5 * x * step);
  return x;
}

}  // namespace

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double inv_normal_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("inv_normal_cdf: argument must lie in (0, 1)");
  if (u == 0.5) return 0.0;
  if (u < 0.5) return lower_quantile(u);
  return -lower_quantile(1.0 - u);
}

double clamp_uniform(double u) noexcept {
  constexpr double lo = 0x1.0p-32;
  return std::clamp(u, lo, 1.0 - lo);
}

GaussianHead::GaussianHead(Eigen::VectorXd mean_, Eigen::VectorXd stddev_)
    : mean(std::move(mean_)), stddev(std::move(stddev_)) {
  if (mean.size() != stddev.size()) throw std::invalid_argument("GaussianHead: mean/stddev size mismatch");
  if (!(stddev.array() > 0.0).all()) throw std::invalid_argument("GaussianHead: stddev must be positive");
}

Eigen::VectorXd reparam_action(const GaussianHead& head, std::span<const double> u) {
  if (u.size() != static_cast<std::size_t>(head.mean.size())) {
    throw std::invalid_argument("reparam_action: uniform vector does not match action dimension");
  }
  Eigen::VectorXd a(head.mean.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = head.mean[i] + head.stddev[i] * inv_normal_cdf(u[i]);
  return a;
}

}  // namespace rqmcpg
