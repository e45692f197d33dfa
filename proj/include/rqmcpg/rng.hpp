#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rqmcpg {

/// SplitMix64 finalizer; a bijection on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Keyed hash of two words. Used as the counter-based generator core and for
/// deriving child stream seeds.
constexpr std::uint64_t hash2(std::uint64_t key, std::uint64_t value) noexcept {
  return mix64(mix64(key + 0x9E3779B97F4A7C15ULL) ^ (value * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

/// Counter-based random stream: draw number `counter` is a pure function of
/// (seed, counter). Copying a stream copies its position, so two copies yield
/// identical draws.
class RngStream {
 public:
  constexpr explicit RngStream(std::uint64_t seed = 0) noexcept : seed_(seed) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  constexpr std::uint64_t next_u64() noexcept { return hash2(seed_, counter_++); }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0, 1).
  constexpr double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes two draws per variate so the
  /// counter advances by a fixed amount.
  double normal() noexcept {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Independent child stream identified by `key`; does not advance this one.
  constexpr RngStream split(std::uint64_t key) const noexcept {
    return RngStream(hash2(seed_ ^ 0x5851F42D4C957F2DULL, key));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace rqmcpg
