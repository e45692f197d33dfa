#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "rqmcpg/analysis.hpp"
#include "rqmcpg/lowdisc.hpp"

using namespace rqmcpg;

namespace {

// GF(2) rank of the top k x k block, by elimination on explicit bit rows.
int top_block_rank(const GeneratorMatrices& g, int j) {
  const int k = g.in_bits();
  const int w = g.out_bits();
  std::vector<std::vector<int>> m(k, std::vector<int>(k));
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) m[r][c] = static_cast<int>((g.column(j, c) >> (w - 1 - r)) & 1U);
  }
  int rank = 0;
  for (int c = 0; c < k && rank < k; ++c) {
    int pivot = -1;
    for (int r = rank; r < k; ++r) {
      if (m[r][c]) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int r = 0; r < k; ++r) {
      if (r != rank && m[r][c]) {
        for (int cc = 0; cc < k; ++cc) m[r][cc] ^= m[rank][cc];
      }
    }
    ++rank;
  }
  return rank;
}

// Exactly one point in each [i/2^k, (i+1)/2^k) in every coordinate.
bool stratified(const PointSet& p, int k) {
  const std::size_t cells = std::size_t{1} << k;
  for (int j = 0; j < p.dims(); ++j) {
    std::vector<int> count(cells, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double u = p(i, j);
      if (!(u >= 0.0 && u < 1.0)) return false;
      ++count[static_cast<std::size_t>(std::floor(u * static_cast<double>(cells)))];
    }
    if (std::any_of(count.begin(), count.end(), [](int c) { return c != 1; })) return false;
  }
  return true;
}

double radical_inverse(std::uint64_t i) {
  double out = 0.0;
  double f = 0.5;
  for (; i; i >>= 1, f *= 0.5) {
    if (i & 1U) out += f;
  }
  return out;
}

// Kolmogorov-Smirnov statistic against U(0,1).
double ks_uniform(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - x[i], x[i] - static_cast<double>(i) / n});
  }
  return d;
}

double product_mean(const PointSet& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double prod = 1.0;
    for (int j = 0; j < p.dims(); ++j) prod *= p(i, j);
    acc += prod;
  }
  return acc / static_cast<double>(p.size());
}

}  // namespace

TEST_CASE("sobol: dimension 1 is the binary identity") {
  const auto g = sobol_matrices(1, 3);
  for (int c = 0; c < 3; ++c) CHECK(g.column(0, c) == (std::uint64_t{1} << (kSobolOutBits - 1 - c)));
}

TEST_CASE("sobol: top blocks are non-singular (GF(2) elimination oracle)") {
  const auto g = sobol_matrices(2, 4);
  CHECK(top_block_rank(g, 1) == 4);
  const auto big = sobol_matrices(kMaxSobolDims, 12);
  for (int j = 0; j < big.dims(); ++j) {
    CHECK(top_block_rank(big, j) == 12);
    CHECK(top_block_nonsingular(big, j));
  }
}

TEST_CASE("sobol: errors") {
  CHECK_THROWS_AS(sobol_matrices(129, 4), DimensionExceedsTable);
  CHECK_THROWS_AS(sobol_matrices(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(sobol_matrices(2, 32), std::invalid_argument);
}

TEST_CASE("sobol: matches frozen reference values") {
  // Unscrambled Sobol points (new-joe-kuo-6.21201) from an independent
  // implementation, reordered from Gray-code to natural index order; units of 1/16.
  struct Row {
    int dim;
    std::array<int, 16> v;
  };
  const std::vector<Row> rows = {
      {0, {0, 8, 4, 12, 2, 10, 6, 14, 1, 9, 5, 13, 3, 11, 7, 15}},
      {1, {0, 8, 12, 4, 10, 2, 6, 14, 15, 7, 3, 11, 5, 13, 9, 1}},
      {2, {0, 8, 12, 4, 6, 14, 10, 2, 9, 1, 5, 13, 15, 7, 3, 11}},
      {9, {0, 8, 4, 12, 14, 6, 10, 2, 11, 3, 15, 7, 5, 13, 1, 9}},
      {49, {0, 8, 4, 12, 2, 10, 6, 14, 3, 11, 7, 15, 1, 9, 5, 13}},
      {120, {0, 8, 12, 4, 14, 6, 2, 10, 7, 15, 11, 3, 9, 1, 5, 13}},
      {127, {0, 8, 12, 4, 6, 14, 10, 2, 7, 15, 11, 3, 1, 9, 13, 5}},
  };
  const auto p = generate_net(sobol_matrices(128, 4));
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < 16; ++i) CHECK(p(i, r.dim) == r.v[i] / 16.0);
  }
  // Deeper indices, units of 1/1024.
  const int deep[][3] = {{777, 1, 193},  {777, 30, 317},  {777, 127, 775}, {1000, 1, 165}, {1000, 30, 201},
                         {1000, 127, 155}, {1023, 1, 261}, {1023, 30, 425}, {1023, 127, 187}};
  const auto q = generate_net(sobol_matrices(128, 10));
  for (const auto& d : deep) CHECK(q(static_cast<std::size_t>(d[0]), d[1]) == d[2] / 1024.0);
}

TEST_CASE("generate_net: identity matrices give the radical inverse") {
  const auto p = generate_net(identity_matrices(1, 2));
  const std::vector<double> expected = {0.0, 0.5, 0.25, 0.75};
  REQUIRE(p.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(p(i, 0) == expected[i]);

  const auto q = generate_net(identity_matrices(2, 1));
  CHECK(q(0, 0) == 0.0);
  CHECK(q(0, 1) == 0.0);
  CHECK(q(1, 0) == 0.5);
  CHECK(q(1, 1) == 0.5);

  const auto r = generate_net(identity_matrices(1, 10));
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r(i, 0) == radical_inverse(i));
  CHECK(p.kind() == PointKind::net_raw);
}

TEST_CASE("generator matrices reject singular top blocks") {
  // Column 1 equal to column 0 makes the 2x2 block singular.
  const std::uint64_t top = std::uint64_t{1} << 30;
  CHECK_THROWS_AS(GeneratorMatrices(1, 2, 31, {top, top}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorMatrices(1, 2, 31, {top}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorMatrices(1, 0, 31, {}), std::invalid_argument);
}

TEST_CASE("left matrix scramble") {
  SUBCASE("identity scramble leaves matrices unchanged") {
    const auto g = sobol_matrices(3, 5);
    const std::vector<ScrambleMatrix> ls(3, ScrambleMatrix::identity(kSobolOutBits));
    CHECK(left_matrix_scramble(g, ls) == g);
  }
  SUBCASE("k=2 example: L=[[1,0],[1,1]] times identity") {
    const auto g = identity_matrices(1, 2, 2);
    const ScrambleMatrix l{{0b10, 0b11}};
    const auto s = left_matrix_scramble(g, std::span<const ScrambleMatrix>(&l, 1));
    // Column c of L*C written as (row0, row1): (1,1) and (0,1).
    CHECK(s.column(0, 0) == 0b11);
    CHECK(s.column(0, 1) == 0b01);
  }
  SUBCASE("random scrambles keep top blocks non-singular and stratification") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RngStream rng(seed);
      const auto s = left_matrix_scramble(sobol_matrices(6, 8), rng);
      for (int j = 0; j < 6; ++j) CHECK(top_block_rank(s, j) == 8);
      CHECK(stratified(generate_net(s), 8));
    }
  }
}

TEST_CASE("digital shift") {
  const auto p = generate_net(sobol_matrices(3, 4));
  const std::vector<std::uint64_t> zero(3, 0);
  CHECK(digital_shift(p, zero).raw_values().size() == p.raw_values().size());
  CHECK(std::equal(p.raw_values().begin(), p.raw_values().end(), digital_shift(p, zero).raw_values().begin()));

  const std::vector<std::uint64_t> v = {0x2AAAAAAAULL, 0x12345678ULL, 0x7FFFFFFFULL};
  const auto s = digital_shift(p, v);
  CHECK(s.kind() == PointKind::net_lms_shift);
  for (int j = 0; j < 3; ++j) CHECK(s(0, j) == static_cast<double>(v[j]) * std::ldexp(1.0, -kSobolOutBits));
  const auto back = digital_shift(s, v);
  CHECK(std::equal(p.raw_values().begin(), p.raw_values().end(), back.raw_values().begin()));

  RngStream rng(5);
  CHECK(stratified(digital_shift(p, rng), 4));
}

TEST_CASE("owen scramble") {
  const auto g = sobol_matrices(3, 6);
  RngStream a(11), b(11);
  CHECK(owen_scramble(g, a) == owen_scramble(g, b));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed);
    const auto p = owen_scramble(g, rng);
    CHECK(p.kind() == PointKind::net_owen);
    CHECK(stratified(p, 6));
  }

  SUBCASE("each coordinate of each point is uniform over seeds (KS, alpha 0.001)") {
    const auto g4 = sobol_matrices(3, 4);
    constexpr int kSeeds = 1000;
    std::vector<std::vector<double>> samples(16 * 3);
    for (int seed = 0; seed < kSeeds; ++seed) {
      RngStream rng(static_cast<std::uint64_t>(seed) + 1000);
      const auto p = owen_scramble(g4, rng);
      for (std::size_t i = 0; i < 16; ++i) {
        for (int j = 0; j < 3; ++j) samples[i * 3 + j].push_back(p(i, j));
      }
    }
    // Asymptotic critical value 1.9495 / sqrt(n) at alpha = 0.001.
    const double crit = 1.9495 / std::sqrt(static_cast<double>(kSeeds));
    for (auto& s : samples) CHECK(ks_uniform(s) < crit);
  }
}

TEST_CASE("mc_uniform") {
  RngStream a(3), b(3);
  const auto p = mc_uniform(1000, 4, a);
  CHECK(p == mc_uniform(1000, 4, b));
  CHECK(p.kind() == PointKind::mc);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(p(i, j) >= 0.0);
      CHECK(p(i, j) < 1.0);
    }
  }
  RngStream c(4);
  const auto q = mc_uniform(std::size_t{1} << 16, 1, c);
  double mean = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) mean += q(i, 0);
  mean /= static_cast<double>(q.size());
  CHECK(std::abs(mean - 0.5) < 0.006);
}

TEST_CASE("randomized_sobol stratifies for every kind and size") {
  for (int d : {1, 2, 6}) {
    for (int k : {4, 8, 10}) {
      for (auto r : {Randomization::lms_shift, Randomization::owen}) {
        RngStream rng(static_cast<std::uint64_t>(d * 100 + k));
        CHECK(stratified(randomized_sobol(d, k, r, rng), k));
      }
    }
  }
  RngStream rng(1);
  const auto single = randomized_sobol(4, 0, Randomization::lms_shift, rng);
  CHECK(single.size() == 1);
}

TEST_CASE("unbiasedness of product integrand over 1000 randomizations") {
  // f(u) = prod u_j on [0,1)^4 integrates to 1/16.
  for (auto r : {Randomization::lms_shift, Randomization::owen}) {
    std::vector<double> est;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      RngStream rng(seed);
      est.push_back(product_mean(randomized_sobol(4, 5, r, rng)));
    }
    const auto ms = mean_and_stderr(est);
    CHECK(std::abs(ms.mean - 1.0 / 16.0) < 3.0 * ms.halfwidth);
  }
}

TEST_CASE("variance rate of product integrand") {
  constexpr int kReps = 100;
  for (int d : {2, 4, 6}) {
    std::vector<double> ns, var_q, var_m;
    const double truth = std::pow(0.5, d);
    for (int k = 4; k <= 12; ++k) {
      std::vector<double> q, m;
      for (int r = 0; r < kReps; ++r) {
        RngStream a(static_cast<std::uint64_t>(k * 1000 + r));
        q.push_back(product_mean(randomized_sobol(d, k, Randomization::lms_shift, a)));
        RngStream b(static_cast<std::uint64_t>(k * 1000 + r + 500));
        m.push_back(product_mean(mc_uniform(std::size_t{1} << k, d, b)));
      }
      ns.push_back(std::ldexp(1.0, k));
      var_q.push_back(mse(q, truth));
      var_m.push_back(mse(m, truth));
    }
    const double sq = loglog_slope(ns, var_q);
    const double sm = loglog_slope(ns, var_m);
    INFO("d=" << d << " rqmc slope " << sq << " mc slope " << sm);
    CHECK(sq <= -1.5);
    CHECK(sm >= -1.2);
    CHECK(sm <= -0.8);
  }
}

TEST_CASE("determinism of randomized sets") {
  for (auto r : {Randomization::lms_shift, Randomization::owen}) {
    RngStream a(42), b(42);
    CHECK(randomized_sobol(5, 7, r, a) == randomized_sobol(5, 7, r, b));
  }
}
