#include "rqmcpg/lowdisc.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

namespace rqmcpg {

namespace {

constexpr std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

bool nonsingular_gf2(std::vector<std::uint64_t> rows, int width) {
  // Gaussian elimination on `width`-bit row vectors.
  std::size_t rank = 0;
  for (int bit = width - 1; bit >= 0 && rank < rows.size(); --bit) {
    const std::uint64_t m = std::uint64_t{1} << bit;
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & m)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r] & m)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank == rows.size();
}

}  // namespace

GeneratorMatrices::GeneratorMatrices(int dims, int in_bits, int out_bits, std::vector<std::uint64_t> columns)
    : dims_(dims), in_bits_(in_bits), out_bits_(out_bits), columns_(std::move(columns)) {
  if (dims < 1) throw std::invalid_argument("generator matrices need at least one dimension");
  if (in_bits < 1 || in_bits > out_bits || out_bits > 64) {
    throw std::invalid_argument("generator matrices require 1 <= in_bits <= out_bits <= 64");
  }
  if (columns_.size() != static_cast<std::size_t>(dims) * in_bits) {
    throw std::invalid_argument("generator matrices: column count does not match dims * in_bits");
  }
  const std::uint64_t mask = low_mask(out_bits);
  for (auto c : columns_) {
    if (c & ~mask) throw std::invalid_argument("generator matrices: column exceeds out_bits");
  }
  for (int j = 0; j < dims; ++j) {
    if (!top_block_nonsingular(*this, j)) {
      throw std::invalid_argument("generator matrices: top block of dimension " + std::to_string(j) +
                                  " is singular");
    }
  }
}

bool top_block_nonsingular(const GeneratorMatrices& g, int j) {
  // Column c restricted to rows 0..k-1 is its top k bits.
  const int k = g.in_bits();
  std::vector<std::uint64_t> cols;
  cols.reserve(k);
  for (auto c : g.columns(j)) cols.push_back(c >> (g.out_bits() - k));
  return nonsingular_gf2(std::move(cols), k);
}

GeneratorMatrices identity_matrices(int dims, int in_bits, int out_bits) {
  std::vector<std::uint64_t> cols;
  cols.reserve(static_cast<std::size_t>(dims) * in_bits);
  for (int j = 0; j < dims; ++j) {
    for (int c = 0; c < in_bits; ++c) cols.push_back(std::uint64_t{1} << (out_bits - 1 - c));
  }
  return GeneratorMatrices(dims, in_bits, out_bits, std::move(cols));
}

GeneratorMatrices sobol_matrices(int dims, int in_bits) {
  if (dims > kMaxSobolDims) {
    throw DimensionExceedsTable("sobol_matrices: " + std::to_string(dims) + " dimensions exceed the " +
                                std::to_string(kMaxSobolDims) + "-dimension direction table");
  }
  if (dims < 1) throw std::invalid_argument("sobol_matrices: dims must be >= 1");
  if (in_bits < 1 || in_bits > kSobolOutBits) throw std::invalid_argument("sobol_matrices: in_bits must be in [1, 31]");

  constexpr int w = kSobolOutBits;
  std::vector<std::uint64_t> cols;
  cols.reserve(static_cast<std::size_t>(dims) * in_bits);
  for (int j = 0; j < dims; ++j) {
    const auto& dir = detail::kSobolDirections[j];
    const int s = static_cast<int>(dir.degree);
    if (s == 0) {
      for (int c = 0; c < in_bits; ++c) cols.push_back(std::uint64_t{1} << (w - 1 - c));
      continue;
    }
    // m[i] for i = 1..in_bits (1-based), extended by the primitive-polynomial
    // recurrence past the initial values.
    std::vector<std::uint64_t> m(in_bits + 1);
    for (int i = 1; i <= in_bits; ++i) {
      if (i <= s) {
        m[i] = dir.m[i - 1];
        continue;
      }
      std::uint64_t v = m[i - s] ^ (m[i - s] << s);
      for (int q = 1; q < s; ++q) {
        if ((dir.poly >> (s - q)) & 1u) v ^= m[i - q] << q;
      }
      m[i] = v;
    }
    for (int i = 1; i <= in_bits; ++i) cols.push_back(m[i] << (w - i));
  }
  return GeneratorMatrices(dims, in_bits, w, std::move(cols));
}

std::string_view to_string(PointKind kind) noexcept {
  switch (kind) {
    case PointKind::mc: return "mc";
    case PointKind::net_raw: return "net-raw";
    case PointKind::net_lms_shift: return "net-lms-shift";
    case PointKind::net_owen: return "net-owen";
  }
  return "?";
}

std::string_view to_string(Randomization r) noexcept {
  return r == Randomization::owen ? "owen" : "lms-shift";
}

PointSet::PointSet(std::size_t n, int dims, int frac_bits, PointKind kind, std::optional<std::uint64_t> seed,
                   std::vector<std::uint64_t> raw)
    : n_(n),
      dims_(dims),
      frac_bits_(frac_bits),
      kind_(kind),
      seed_(seed),
      scale_(std::ldexp(1.0, -frac_bits)),
      raw_(std::move(raw)) {
  if (raw_.size() != n * static_cast<std::size_t>(dims)) {
    throw std::invalid_argument("point set: value array does not match n x dims");
  }
  if (frac_bits < 1 || frac_bits > 64) throw std::invalid_argument("point set: frac_bits must be in [1, 64]");
  const std::uint64_t mask = low_mask(frac_bits);
  for (auto v : raw_) {
    if (v & ~mask) throw std::invalid_argument("point set: coordinate outside [0, 1)");
  }
}

void PointSet::row(std::size_t i, std::span<double> out) const {
  if (out.size() != static_cast<std::size_t>(dims_)) throw std::invalid_argument("point set: row buffer size");
  for (int j = 0; j < dims_; ++j) out[j] = (*this)(i, j);
}

std::vector<double> PointSet::row(std::size_t i) const {
  std::vector<double> out(dims_);
  row(i, out);
  return out;
}

std::uint64_t ScrambleMatrix::apply(std::uint64_t column, int out_bits) const {
  std::uint64_t out = 0;
  for (int r = 0; r < out_bits; ++r) {
    if (std::popcount(rows[r] & column) & 1) out |= std::uint64_t{1} << (out_bits - 1 - r);
  }
  return out;
}

ScrambleMatrix ScrambleMatrix::identity(int out_bits) {
  ScrambleMatrix l;
  for (int r = 0; r < out_bits; ++r) l.rows.push_back(std::uint64_t{1} << (out_bits - 1 - r));
  return l;
}

ScrambleMatrix ScrambleMatrix::random(int out_bits, RngStream& rng) {
  ScrambleMatrix l;
  const std::uint64_t full = low_mask(out_bits);
  for (int r = 0; r < out_bits; ++r) {
    const int diag = out_bits - 1 - r;
    // Entries left of the diagonal are the more significant bits.
    const std::uint64_t strictly_lower = full & ~low_mask(diag + 1);
    l.rows.push_back((std::uint64_t{1} << diag) | (rng.next_u64() & strictly_lower));
  }
  return l;
}

PointSet generate_net(const GeneratorMatrices& g) {
  const std::size_t n = g.points();
  const int d = g.dims();
  std::vector<std::uint64_t> raw(n * d);
  for (int j = 0; j < d; ++j) {
    const auto cols = g.columns(j);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t x = 0;
      for (std::size_t bits = i, c = 0; bits; bits >>= 1, ++c) {
        if (bits & 1) x ^= cols[c];
      }
      raw[i * d + j] = x;
    }
  }
  return PointSet(n, d, g.out_bits(), PointKind::net_raw, std::nullopt, std::move(raw));
}

GeneratorMatrices left_matrix_scramble(const GeneratorMatrices& g, std::span<const ScrambleMatrix> scramblers) {
  if (scramblers.size() != static_cast<std::size_t>(g.dims())) {
    throw std::invalid_argument("left_matrix_scramble: one scramble matrix per dimension required");
  }
  std::vector<std::uint64_t> cols;
  cols.reserve(static_cast<std::size_t>(g.dims()) * g.in_bits());
  for (int j = 0; j < g.dims(); ++j) {
    if (scramblers[j].rows.size() != static_cast<std::size_t>(g.out_bits())) {
      throw std::invalid_argument("left_matrix_scramble: scramble matrix size does not match out_bits");
    }
    for (auto c : g.columns(j)) cols.push_back(scramblers[j].apply(c, g.out_bits()));
  }
  return GeneratorMatrices(g.dims(), g.in_bits(), g.out_bits(), std::move(cols));
}

GeneratorMatrices left_matrix_scramble(const GeneratorMatrices& g, RngStream& rng) {
  std::vector<ScrambleMatrix> ls;
  ls.reserve(g.dims());
  for (int j = 0; j < g.dims(); ++j) ls.push_back(ScrambleMatrix::random(g.out_bits(), rng));
  return left_matrix_scramble(g, ls);
}

PointSet digital_shift(const PointSet& p, std::span<const std::uint64_t> shifts) {
  if (shifts.size() != static_cast<std::size_t>(p.dims())) {
    throw std::invalid_argument("digital_shift: one shift per dimension required");
  }
  std::vector<std::uint64_t> raw(p.raw_values().begin(), p.raw_values().end());
  const auto d = static_cast<std::size_t>(p.dims());
  for (std::size_t idx = 0; idx < raw.size(); ++idx) raw[idx] ^= shifts[idx % d];
  return PointSet(p.size(), p.dims(), p.frac_bits(), PointKind::net_lms_shift, p.seed(), std::move(raw));
}

PointSet digital_shift(const PointSet& p, RngStream& rng) {
  std::vector<std::uint64_t> shifts(p.dims());
  for (auto& v : shifts) v = rng.next_u64() & low_mask(p.frac_bits());
  return digital_shift(p, shifts);
}

PointSet owen_scramble(const GeneratorMatrices& g, RngStream& rng) {
  const PointSet net = generate_net(g);
  const int w = g.out_bits();
  const int d = g.dims();
  const std::uint64_t key = rng.next_u64();
  std::vector<std::uint64_t> raw(net.raw_values().begin(), net.raw_values().end());
  std::vector<std::uint64_t> digit_keys(static_cast<std::size_t>(d) * w);
  for (int j = 0; j < d; ++j) {
    for (int l = 0; l < w; ++l) digit_keys[static_cast<std::size_t>(j) * w + l] = hash2(hash2(key, j), l);
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (int j = 0; j < d; ++j) {
      const std::uint64_t x = raw[i * d + j];
      std::uint64_t flips = 0;
      for (int l = 0; l < w; ++l) {
        const int pos = w - 1 - l;
        // Digits 1..l (the l most significant) select the permutation of digit l+1.
        const std::uint64_t prefix = l == 0 ? 0 : x >> (pos + 1);
        flips |= (hash2(digit_keys[static_cast<std::size_t>(j) * w + l], prefix) & 1) << pos;
      }
      raw[i * d + j] = x ^ flips;
    }
  }
  return PointSet(net.size(), d, w, PointKind::net_owen, key, std::move(raw));
}

PointSet mc_uniform(std::size_t n, int dims, RngStream& rng) {
  if (n < 1 || dims < 1) throw std::invalid_argument("mc_uniform: n and dims must be >= 1");
  const std::uint64_t seed = rng.seed();
  std::vector<std::uint64_t> raw(n * dims);
  for (auto& v : raw) v = rng.next_u64() >> 11;
  return PointSet(n, dims, 53, PointKind::mc, seed, std::move(raw));
}

PointSet randomized_sobol(int dims, int log2n, Randomization randomization, RngStream& rng) {
  const std::uint64_t seed = rng.seed();
  if (log2n == 0) {
    std::vector<std::uint64_t> raw(dims);
    for (auto& v : raw) v = rng.next_u64() & low_mask(kSobolOutBits);
    return PointSet(1, dims, kSobolOutBits,
                    randomization == Randomization::owen ? PointKind::net_owen : PointKind::net_lms_shift, seed,
                    std::move(raw));
  }
  const GeneratorMatrices g = sobol_matrices(dims, log2n);
  if (randomization == Randomization::owen) return owen_scramble(g, rng);
  const GeneratorMatrices scrambled = left_matrix_scramble(g, rng);
  PointSet shifted = digital_shift(generate_net(scrambled), rng);
  return PointSet(shifted.size(), shifted.dims(), shifted.frac_bits(), shifted.kind(), seed,
                  {shifted.raw_values().begin(), shifted.raw_values().end()});
}

}  // namespace rqmcpg
