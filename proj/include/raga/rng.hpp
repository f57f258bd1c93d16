#pragma once

#include <cstdint>
#include <random>

namespace raga {

/// Pinned generator: std::mt19937_64 (64-bit Mersenne Twister, whose output
/// sequence is fixed by the C++ standard) with a hand-rolled 53-bit
/// conversion to [0, 1). std::uniform_real_distribution is avoided because
/// its algorithm is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace raga
