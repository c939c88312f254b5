#pragma once

#include <cstdint>
#include <random>

namespace twisted {

/// Deterministic random stream keyed by (seed, stream). Distinct streams of
/// the same seed are independent, so work split across threads draws the
/// same numbers regardless of scheduling.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  /// Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace twisted
