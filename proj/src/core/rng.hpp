#pragma once

#include <cstdint>
#include <random>

namespace mis3d {

// mt19937_64 is bit-exact across standard libraries; std::uniform_real_distribution
// is not. All "uniform" draws therefore go through these helpers so that a seed
// pins byte-identical outputs on any platform.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). Rejection-free modulo is fine here: n is tiny
  // compared with 2^64, and reproducibility matters more than the 2^-50 bias.
  uint64_t below(uint64_t n) { return eng_() % n; }

  uint64_t raw() { return eng_(); }

private:
  std::mt19937_64 eng_;
};

} // namespace mis3d
