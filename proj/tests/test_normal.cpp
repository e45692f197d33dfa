#include <doctest.h>

#include <cmath>
#include <vector>

#include "rqmcpg/lowdisc.hpp"
#include "rqmcpg/normal.hpp"

using namespace rqmcpg;

namespace {

// Independent oracle: long-double CDF and bisection for the quantile.
long double cdf_ld(long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); }

long double upper_tail_ld(long double x) { return 0.5L * std::erfc(x / std::sqrt(2.0L)); }

// Above the median, bisect on the upper tail 1-u (exact for double u) since
// the CDF itself cannot resolve u near 1.
long double quantile_ld(double u) {
  const bool upper = u > 0.5;
  const long double target = upper ? 1.0L - static_cast<long double>(u) : static_cast<long double>(u);
  long double lo = -40.0L, hi = 40.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (upper ? upper_tail_ld(mid) > target : cdf_ld(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5L * (lo + hi);
}

}  // namespace

TEST_CASE("inv_normal_cdf: reference values") {
  CHECK(inv_normal_cdf(0.5) == 0.0);
  CHECK(std::abs(inv_normal_cdf(0.8413447460685429) - 1.0) < 1e-8);
  CHECK(std::abs(inv_normal_cdf(0.975) - 1.959963985) < 1e-8);
}

TEST_CASE("inv_normal_cdf: domain errors") {
  CHECK_THROWS_AS(inv_normal_cdf(0.0), std::domain_error);
  CHECK_THROWS_AS(inv_normal_cdf(1.0), std::domain_error);
  CHECK_THROWS_AS(inv_normal_cdf(-0.1), std::domain_error);
  CHECK_THROWS_AS(inv_normal_cdf(std::nan("")), std::domain_error);
}

TEST_CASE("inv_normal_cdf: absolute error 1e-9 on [1e-15, 1-1e-15]") {
  // Log-spaced lower tail, linear middle, mirrored upper tail.
  std::vector<double> us;
  for (int i = 0; i <= 600; ++i) us.push_back(std::pow(10.0, -15.0 + 14.0 * i / 600.0));
  for (int i = 1; i < 1000; ++i) us.push_back(i / 1000.0);
  for (int i = 0; i <= 300; ++i) us.push_back(1.0 - std::pow(10.0, -15.0 + 14.0 * i / 300.0));
  double worst = 0.0;
  for (double u : us) {
    if (!(u > 0.0 && u < 1.0)) continue;
    const long double err = std::abs(static_cast<long double>(inv_normal_cdf(u)) - quantile_ld(u));
    worst = std::max(worst, static_cast<double>(err));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("inv_normal_cdf: antisymmetry on a dyadic grid") {
  // Dyadic u makes 1-u exact in binary floating point.
  for (int i = 1; i < 4096; ++i) {
    const double u = i / 4096.0;
    CHECK(std::abs(inv_normal_cdf(1.0 - u) + inv_normal_cdf(u)) <= 1e-12);
  }
  for (int e = 13; e <= 48; ++e) {
    const double u = std::ldexp(1.0, -e);
    CHECK(std::abs(inv_normal_cdf(1.0 - u) + inv_normal_cdf(u)) <= 1e-12);
  }
}

TEST_CASE("inv_normal_cdf: strictly increasing on 1e5 points") {
  double prev = -INFINITY;
  int bad = 0;
  for (int i = 1; i < 100000; ++i) {
    const double q = inv_normal_cdf(i / 100000.0);
    if (!(q > prev)) ++bad;
    prev = q;
  }
  CHECK(bad == 0);
}

TEST_CASE("round trip through an independent CDF") {
  for (int i = 1; i < 2000; ++i) {
    const double u = i / 2000.0;
    CHECK(std::abs(static_cast<double>(cdf_ld(inv_normal_cdf(u))) - u) <= 1e-9);
  }
}

TEST_CASE("normal_cdf agrees with the oracle") {
  for (double x = -30.0; x <= 8.0; x += 0.125) {
    const long double ref = cdf_ld(x);
    CHECK(std::abs(normal_cdf(x) - static_cast<double>(ref)) <= 1e-15 + 1e-13 * static_cast<double>(ref));
  }
}

TEST_CASE("clamp_uniform") {
  CHECK(clamp_uniform(0.0) == std::ldexp(1.0, -32));
  CHECK(clamp_uniform(1.0) == 1.0 - std::ldexp(1.0, -32));
  CHECK(clamp_uniform(0.3) == 0.3);
  CHECK(std::isfinite(inv_normal_cdf(clamp_uniform(0.0))));
}

TEST_CASE("reparam_action") {
  const GaussianHead head(Eigen::Vector2d(1.5, -2.0), Eigen::Vector2d(0.3, 2.0));
  const std::vector<double> half = {0.5, 0.5};
  CHECK(reparam_action(head, half) == head.mean);

  const GaussianHead tiny(Eigen::Vector2d(1.5, -2.0), Eigen::Vector2d(1e-12, 1e-12));
  const std::vector<double> u = {0.01, 0.99};
  CHECK((reparam_action(tiny, u) - tiny.mean).norm() < 1e-10);

  const GaussianHead std1(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
  const std::vector<double> one = {0.8413447460685429};
  CHECK(std::abs(reparam_action(std1, one)[0] - 1.0) < 1e-8);

  const std::vector<double> wrong = {0.5};
  CHECK_THROWS_AS(reparam_action(head, wrong), std::invalid_argument);
  const std::vector<double> zero = {0.0, 0.5};
  CHECK_THROWS_AS(reparam_action(head, zero), std::domain_error);
  CHECK_THROWS_AS(GaussianHead(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)), std::invalid_argument);
}

TEST_CASE("reparameterized MC draws have unit moments") {
  RngStream rng(9);
  const auto p = mc_uniform(std::size_t{1} << 16, 1, rng);
  const GaussianHead head(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
  double s = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double u = clamp_uniform(p(i, 0));
    const double a = reparam_action(head, std::span<const double>(&u, 1))[0];
    s += a;
    ss += a * a;
  }
  const double n = static_cast<double>(p.size());
  const double mean = s / n;
  const double var = ss / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.02);
}
