#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "summ/error.hpp"

namespace summ {

// SplitMix64 (Steele, Lea & Flood's algorithm, as published in Vigna's
// reference implementation). Chosen so datasets are bit-reproducible from
// (seed, K, L) in any language with 64-bit integers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw InputError("next_below: n must be positive");
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::uint64_t state_;
};

// One SplitMix64 step applied to an arbitrary value (stateless mix).
inline std::uint64_t mix64(std::uint64_t x) { return SplitMix64(x).next(); }

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

// Named seed derivation: every random stream in the project is keyed by the
// user seed, a stream name, and an index. derive_seed(base, name, i) =
// mix64(mix64(base ^ fnv1a64(name)) ^ i).
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view stream,
                                 std::uint64_t index = 0) {
  return mix64(mix64(base ^ fnv1a64(stream)) ^ index);
}

// Index into a categorical distribution given cumulative walk of `probs`.
// `probs` must be non-negative; draws from the normalized distribution are
// exact when the entries sum to 1.
std::size_t draw_categorical(SplitMix64& rng, std::span<const double> probs);

}  // namespace summ
