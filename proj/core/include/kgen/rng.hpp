#pragma once

#include <cstdint>

namespace kgen {

// SplitMix64 (Steele, Lea & Flood 2014; Vigna's fixed-increment variant).
// Deterministic and portable: the same initial state yields the same
// sequence on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Exactly uniform over [0, n) by rejecting the top of the 64-bit range.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t splitmix_scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Per-formula seed: three SplitMix64 absorption steps over
// (master seed, point index, sample index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point_index,
                                 std::uint64_t sample_index) {
  std::uint64_t s = detail::splitmix_scramble(master + 0x9E3779B97F4A7C15ULL);
  s = detail::splitmix_scramble(s ^ (point_index + 0x9E3779B97F4A7C15ULL));
  s = detail::splitmix_scramble(s ^ (sample_index + 0x9E3779B97F4A7C15ULL));
  return s;
}

}  // namespace kgen
