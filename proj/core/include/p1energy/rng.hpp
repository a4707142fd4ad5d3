#pragma once

#include <cstdint>

namespace p1energy {

// Counter-based generator: output i of stream s is mix(seed, s, i), so any
// (seed, stream) pair can be replayed independently of worker layout.
// Mixing function is splitmix64's finalizer.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))), counter_(0) {}

  std::uint64_t next_u64() { return mix(base_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., n-1}, unbiased (rejection).
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  // Uniform in [lo, hi] inclusive.
  long long next_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_;
};

}  // namespace p1energy
