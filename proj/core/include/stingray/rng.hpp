#pragma once

#include <cstdint>

namespace stingray {

/// Counter-seeded deterministic generator (splitmix64 core).
///
/// Stream i for a given seed is derived from (seed, i) alone, so every Monte
/// Carlo trial can own its stream and results are independent of how trials
/// are partitioned across worker threads.  Uniform draws below a bound use
/// bit-buffered rejection, which keeps the consumed bit positions (and hence
/// the whole experiment) bit-reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) {
    state_ = mix(mix(seed + 0x9E3779B97F4A7C15ull) + (stream + 1) * 0xBF58476D1CE4E5B9ull);
  }

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Low n bits of the stream, 1 <= n <= 32.  A partially consumed word is
  /// discarded when fewer than n bits remain.
  uint32_t bits(unsigned n) {
    if (buf_bits_ < n) {
      buf_ = next_u64();
      buf_bits_ = 64;
    }
    uint32_t r = static_cast<uint32_t>(buf_ & ((n == 32) ? 0xFFFFFFFFull : ((1ull << n) - 1)));
    buf_ >>= n;
    buf_bits_ -= n;
    return r;
  }

  /// Uniform in [0, n), n >= 1, unbiased (rejection on the next power of two).
  uint32_t below(uint32_t n) {
    if (n <= 1) return 0;
    unsigned width = 32 - __builtin_clz(n - 1);
    for (;;) {
      uint32_t r = bits(width);
      if (r < n) return r;
    }
  }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t state_ = 0;
  uint64_t buf_ = 0;
  unsigned buf_bits_ = 0;
};

}  // namespace stingray
