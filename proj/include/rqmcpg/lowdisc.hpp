#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rqmcpg/rng.hpp"

namespace rqmcpg {

/// Identifier of the embedded direction-number table, recorded in outputs.
inline constexpr std::string_view kDirectionTableId = "new-joe-kuo-6.21201";
inline constexpr int kMaxSobolDims = 128;
inline constexpr int kSobolOutBits = 31;

class DimensionExceedsTable : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Binary generating matrices C_1..C_d of a digital net in base 2.
///
/// Each matrix has `out_bits` rows and `in_bits` columns. A column is packed
/// into an integer whose most significant used bit (bit out_bits-1) is row 0,
/// i.e. the 2^-1 digit of the output coordinate.
class GeneratorMatrices {
 public:
  /// Throws std::invalid_argument when 1 <= in_bits <= out_bits <= 64 fails,
  /// a column has bits above out_bits, or a top in_bits x in_bits block is
  /// singular.
  GeneratorMatrices(int dims, int in_bits, int out_bits, std::vector<std::uint64_t> columns);

  int dims() const noexcept { return dims_; }
  int in_bits() const noexcept { return in_bits_; }
  int out_bits() const noexcept { return out_bits_; }
  std::size_t points() const noexcept { return std::size_t{1} << in_bits_; }

  /// Columns of dimension j, column c is the image of input bit c.
  std::span<const std::uint64_t> columns(int j) const {
    return {columns_.data() + static_cast<std::size_t>(j) * in_bits_, static_cast<std::size_t>(in_bits_)};
  }
  std::uint64_t column(int j, int c) const { return columns(j)[c]; }

  bool operator==(const GeneratorMatrices&) const = default;

 private:
  int dims_;
  int in_bits_;
  int out_bits_;
  std::vector<std::uint64_t> columns_;
};

/// True when the top k x k block of dimension j is non-singular over GF(2).
bool top_block_nonsingular(const GeneratorMatrices& g, int j);

/// Identity generating matrices (van der Corput in every dimension).
GeneratorMatrices identity_matrices(int dims, int in_bits, int out_bits = kSobolOutBits);

/// Sobol generating matrices with 31 output bits. Requires 1 <= dims <= 128
/// and 1 <= in_bits <= 31.
GeneratorMatrices sobol_matrices(int dims, int in_bits);

enum class PointKind { mc, net_raw, net_lms_shift, net_owen };

std::string_view to_string(PointKind kind) noexcept;

/// N x d coordinates in [0,1) stored as fixed-point integers with `frac_bits`
/// fractional bits, row-major.
class PointSet {
 public:
  PointSet(std::size_t n, int dims, int frac_bits, PointKind kind, std::optional<std::uint64_t> seed,
           std::vector<std::uint64_t> raw);

  std::size_t size() const noexcept { return n_; }
  int dims() const noexcept { return dims_; }
  int frac_bits() const noexcept { return frac_bits_; }
  PointKind kind() const noexcept { return kind_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  std::uint64_t raw(std::size_t i, int j) const { return raw_[i * dims_ + j]; }
  double operator()(std::size_t i, int j) const { return static_cast<double>(raw(i, j)) * scale_; }

  /// Copies point i into `out`, which must have dims() entries.
  void row(std::size_t i, std::span<double> out) const;
  std::vector<double> row(std::size_t i) const;

  std::span<const std::uint64_t> raw_values() const noexcept { return raw_; }

  bool operator==(const PointSet& other) const {
    return n_ == other.n_ && dims_ == other.dims_ && frac_bits_ == other.frac_bits_ && kind_ == other.kind_ &&
           raw_ == other.raw_;
  }

 private:
  std::size_t n_;
  int dims_;
  int frac_bits_;
  PointKind kind_;
  std::optional<std::uint64_t> seed_;
  double scale_;
  std::vector<std::uint64_t> raw_;
};

/// Lower-triangular binary matrix with unit diagonal, stored by rows using the
/// same bit convention as generator columns (row r's own diagonal entry is
/// bit out_bits-1-r).
struct ScrambleMatrix {
  std::vector<std::uint64_t> rows;

  std::uint64_t apply(std::uint64_t column, int out_bits) const;
  static ScrambleMatrix identity(int out_bits);
  static ScrambleMatrix random(int out_bits, RngStream& rng);
};

/// Points i = 0..2^k-1 in index order; coordinate j of point i is the XOR of
/// the columns of C_j selected by the set bits of i.
PointSet generate_net(const GeneratorMatrices& g);

/// Returns L_j C_j for the given matrices (one per dimension).
GeneratorMatrices left_matrix_scramble(const GeneratorMatrices& g, std::span<const ScrambleMatrix> scramblers);
/// Draws L_1..L_d from `rng` and scrambles.
GeneratorMatrices left_matrix_scramble(const GeneratorMatrices& g, RngStream& rng);

/// XORs shifts[j] into every coordinate j. Applying the same shifts twice is
/// the identity.
PointSet digital_shift(const PointSet& p, std::span<const std::uint64_t> shifts);
/// Draws one frac_bits-wide shift per dimension from `rng`.
PointSet digital_shift(const PointSet& p, RngStream& rng);

/// Nested uniform (Owen) scrambling of the net generated by `g`. Digit l of a
/// coordinate is flipped by a keyed hash of its more significant digits.
PointSet owen_scramble(const GeneratorMatrices& g, RngStream& rng);

/// n x d independent uniforms with 53 fractional bits.
PointSet mc_uniform(std::size_t n, int dims, RngStream& rng);

enum class Randomization { lms_shift, owen };

std::string_view to_string(Randomization r) noexcept;

/// Randomized Sobol net of 2^log2n points in `dims` dimensions. log2n = 0
/// yields a single uniformly shifted point.
PointSet randomized_sobol(int dims, int log2n, Randomization randomization, RngStream& rng);

namespace detail {
struct SobolDirection {
  std::uint32_t poly;
  std::uint32_t degree;
  std::array<std::uint32_t, 10> m;
};
extern const std::array<SobolDirection, kMaxSobolDims> kSobolDirections;
}  // namespace detail

}  // namespace rqmcpg
