#pragma once

#include <cstdint>
#include <random>

namespace hajlasz {

/// Seedable source used by every generator: std::mt19937_64, with doubles
/// built from the top 53 bits so streams match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// uniform on [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hajlasz
