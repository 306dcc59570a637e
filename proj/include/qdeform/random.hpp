#pragma once

// Deterministic uniform sampling for the seeded scans. mt19937_64 output
// is fully specified by the standard and the bit-to-double conversion is
// fixed here, so a seed reproduces the identical stream on any platform.

#include <cstdint>
#include <random>

namespace qdeform {

class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1), 53-bit resolution
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::uint64_t index(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qdeform
