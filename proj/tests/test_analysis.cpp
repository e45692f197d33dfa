#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rqmcpg/analysis.hpp"

using namespace rqmcpg;

TEST_CASE("mse") {
  const std::vector<double> same(5, 2.5);
  CHECK(mse(same, 2.5) == 0.0);
  const std::vector<double> pm = {4.0, 2.0};
  CHECK(mse(pm, 3.0) == 1.0);
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  std::vector<double> v(37);
  for (auto& x : v) x = nd(gen);
  long double acc = 0.0L;
  for (double x : v) acc += (static_cast<long double>(x) - 0.3L) * (static_cast<long double>(x) - 0.3L);
  CHECK(mse(v, 0.3) == doctest::Approx(static_cast<double>(acc / 37.0L)).epsilon(1e-13));
  CHECK_THROWS_AS(mse(std::vector<double>{}, 0.0), std::invalid_argument);
}

TEST_CASE("grad_variance") {
  const Eigen::Vector3d g(1.0, -2.0, 0.5);
  const std::vector<Eigen::VectorXd> exact(4, g);
  CHECK(grad_variance(exact, g) == 0.0);
  const std::vector<Eigen::VectorXd> unit = {g + Eigen::Vector3d::UnitX()};
  CHECK(grad_variance(unit, g) == 1.0);

  SUBCASE("trace of the outer-product error matrix") {
    std::mt19937_64 gen(2);
    std::normal_distribution<double> nd;
    std::vector<Eigen::VectorXd> gs;
    for (int i = 0; i < 30; ++i) gs.push_back(g + Eigen::Vector3d(nd(gen), 2 * nd(gen), nd(gen)));
    Eigen::Matrix3d outer = Eigen::Matrix3d::Zero();
    for (const auto& x : gs) outer += (x - g) * (x - g).transpose();
    outer /= 30.0;
    CHECK(grad_variance(gs, g) == doctest::Approx(outer.trace()).epsilon(1e-13));

    // Decomposition: spread around the seed mean plus squared bias.
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& x : gs) mean += x;
    mean /= 30.0;
    double spread = 0.0;
    for (const auto& x : gs) spread += (x - mean).squaredNorm();
    spread /= 30.0;
    const double total = spread + (mean - g).squaredNorm();
    CHECK(std::abs(grad_variance(gs, g) - total) <= 1e-10 * total);
  }
  const std::vector<Eigen::VectorXd> wrong = {Eigen::Vector2d(1, 1)};
  CHECK_THROWS_AS(grad_variance(wrong, g), std::invalid_argument);
  CHECK_THROWS_AS(grad_variance(std::vector<Eigen::VectorXd>{}, g), std::invalid_argument);
}

TEST_CASE("grad_alignment") {
  const Eigen::Vector2d g(3.0, 4.0);
  const std::vector<Eigen::VectorXd> gs = {g, -g, Eigen::Vector2d(-4.0, 3.0), 2.0 * g};
  const auto a = grad_alignment(gs, g);
  REQUIRE(a.per_seed.size() == 4);
  CHECK(a.per_seed[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.per_seed[1] == doctest::Approx(2.0));
  CHECK(a.per_seed[2] == doctest::Approx(1.0));
  CHECK(std::abs(a.per_seed[3]) < 1e-15);
  CHECK(a.mean == doctest::Approx(0.75));
  const std::vector<Eigen::VectorXd> zero = {Eigen::Vector2d::Zero()};
  CHECK_THROWS_AS(grad_alignment(zero, g), std::invalid_argument);
  CHECK_THROWS_AS(grad_alignment(gs, Eigen::Vector2d::Zero()), std::invalid_argument);
}

TEST_CASE("ci95") {
  const std::vector<double> flat(10, 1.25);
  const auto c = ci95(flat);
  CHECK(c.mean == 1.25);
  CHECK(c.halfwidth == 0.0);

  // t_{0.975, 1} from tables; sample sd of {0, 2} is sqrt(2).
  const std::vector<double> two = {0.0, 2.0};
  const auto d = ci95(two);
  CHECK(d.mean == 1.0);
  CHECK(d.halfwidth == doctest::Approx(12.706204736174698 * std::sqrt(2.0) / std::sqrt(2.0)).epsilon(1e-10));

  // t_{0.975, 29} = 2.045229642.
  std::vector<double> thirty(30);
  for (int i = 0; i < 30; ++i) thirty[i] = i;
  double sd = 0.0;
  for (double x : thirty) sd += (x - 14.5) * (x - 14.5);
  sd = std::sqrt(sd / 29.0);
  CHECK(ci95(thirty).halfwidth == doctest::Approx(2.045229642132703 * sd / std::sqrt(30.0)).epsilon(1e-9));

  CHECK_THROWS_AS(ci95(std::vector<double>{1.0}), std::invalid_argument);

  SUBCASE("coverage of the standard-normal mean") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    std::vector<double> draws(10000);
    int covered = 0;
    for (int rep = 0; rep < 1000; ++rep) {
      for (auto& x : draws) x = nd(gen);
      const auto ci = ci95(draws);
      if (std::abs(ci.mean) <= ci.halfwidth) ++covered;
    }
    CHECK(covered >= 930);
    CHECK(covered <= 970);
  }
}

TEST_CASE("mean_and_stderr") {
  const std::vector<double> v = {1.0, 3.0};
  const auto m = mean_and_stderr(v);
  CHECK(m.mean == 2.0);
  CHECK(m.halfwidth == doctest::Approx(1.0));
}

TEST_CASE("loglog_slope") {
  std::vector<double> ns, inv, cube;
  for (int k = 2; k <= 10; ++k) {
    const double n = std::ldexp(1.0, k);
    ns.push_back(n);
    inv.push_back(3.0 / n);
    cube.push_back(0.5 / (n * n * n));
  }
  CHECK(loglog_slope(ns, inv) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(loglog_slope(ns, cube) == doctest::Approx(-3.0).epsilon(1e-12));

  SUBCASE("noisy power law over 8 octaves") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> jitter(0.9, 1.1);
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> xs, ys;
      for (int k = 4; k <= 12; ++k) {
        const double n = std::ldexp(1.0, k);
        xs.push_back(n);
        ys.push_back(jitter(gen) * std::pow(n, -1.5));
      }
      CHECK(std::abs(loglog_slope(xs, ys) + 1.5) <= 0.15);
    }
  }
  const std::vector<double> two = {1.0, 2.0};
  CHECK_THROWS_AS(loglog_slope(two, two), std::invalid_argument);
  const std::vector<double> three = {1.0, 2.0, 4.0};
  const std::vector<double> bad = {1.0, 0.0, 1.0};
  CHECK_THROWS_AS(loglog_slope(three, bad), std::invalid_argument);
}
