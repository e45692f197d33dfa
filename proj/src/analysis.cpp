#include "rqmcpg/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace rqmcpg {

double mse(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw std::invalid_argument("mse: no estimates");
  double acc = 0.0;
  for (double e : estimates) acc += (e - truth) * (e - truth);
  return acc / static_cast<double>(estimates.size());
}

double grad_variance(std::span<const Eigen::VectorXd> grads, const Eigen::VectorXd& truth) {
  if (grads.empty()) throw std::invalid_argument("grad_variance: no gradients");
  double acc = 0.0;
  for (const auto& g : grads) {
    if (g.size() != truth.size()) throw std::invalid_argument("grad_variance: length mismatch");
    acc += (g - truth).squaredNorm();
  }
  return acc / static_cast<double>(grads.size());
}

Alignment grad_alignment(std::span<const Eigen::VectorXd> grads, const Eigen::VectorXd& truth) {
  if (grads.empty()) throw std::invalid_argument("grad_alignment: no gradients");
  const double truth_norm = truth.norm();
  if (truth_norm == 0.0) throw std::invalid_argument("grad_alignment: zero ground-truth gradient");
  Alignment out;
  double acc = 0.0;
  for (const auto& g : grads) {
    if (g.size() != truth.size()) throw std::invalid_argument("grad_alignment: length mismatch");
    const double norm = g.norm();
    if (norm == 0.0) throw std::invalid_argument("grad_alignment: zero estimated gradient");
    const double v = 1.0 - g.dot(truth) / (norm * truth_norm);
    out.per_seed.push_back(v);
    acc += v;
  }
  out.mean = acc / static_cast<double>(grads.size());
  return out;
}

namespace {

double sample_stddev(std::span<const double> values, double mean) {
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double mean_of(std::span<const double> values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

}  // namespace

Interval ci95(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("ci95: need at least two values");
  const double mean = mean_of(values);
  const double sd = sample_stddev(values, mean);
  const boost::math::students_t dist(static_cast<double>(values.size() - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return {mean, t * sd / std::sqrt(static_cast<double>(values.size()))};
}

Interval mean_and_stderr(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("mean_and_stderr: need at least two values");
  const double mean = mean_of(values);
  return {mean, sample_stddev(values, mean) / std::sqrt(static_cast<double>(values.size()))};
}

double loglog_slope(std::span<const double> ns, std::span<const double> errors) {
  if (ns.size() != errors.size()) throw std::invalid_argument("loglog_slope: length mismatch");
  if (ns.size() < 3) throw std::invalid_argument("loglog_slope: need at least three points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] > 0.0) || !(errors[i] > 0.0)) throw std::invalid_argument("loglog_slope: inputs must be positive");
    const double x = std::log2(ns[i]);
    const double y = std::log2(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(ns.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: sample sizes must not all be equal");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace rqmcpg
