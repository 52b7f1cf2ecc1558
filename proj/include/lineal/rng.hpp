#pragma once

#include <cstdint>

namespace lineal {

// splitmix64: tiny, platform-independent, splittable. Every random choice in
// the project flows from one of these so frozen seeds reproduce exactly;
// std:: distributions are avoided on purpose (their streams are
// implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound > 0. Modulo bias is irrelevant at the
  // bounds used here (tens of alternatives against 2^64).
  uint64_t next_below(uint64_t bound) { return next_u64() % bound; }

  // Independent stream for stream index i; used to give each sampling shot
  // its own schedule-independent generator.
  static uint64_t derive_seed(uint64_t seed, uint64_t i) {
    Rng mix(seed ^ (0xA3EC647659359ACDULL * (i + 1)));
    return mix.next_u64();
  }
  static Rng derive(uint64_t seed, uint64_t i) { return Rng(derive_seed(seed, i)); }

 private:
  uint64_t state_;
};

}  // namespace lineal
