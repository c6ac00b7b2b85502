#pragma once

#include <cstdint>

namespace geoforge {

/// Counter-based generator (splitmix64 of seed ^ counter). Stateless apart
/// from the counter, so sampled checks replay exactly from the recorded seed.
class CounterRng {
public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t next() {
    uint64_t z = seed_ + 0x9e3779b97f4a7c15ull * (++counter_);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

}  // namespace geoforge
