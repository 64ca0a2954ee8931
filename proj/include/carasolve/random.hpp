#pragma once

#include <cstdint>
#include <random>

namespace carasolve {

/// Seeded RNG with a fixed uint64 -> double mapping, so identical seeds give
/// identical streams on every platform (std::uniform_real_distribution does
/// not guarantee that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n); returns 0 for n = 0.
  std::size_t index(std::size_t n) {
    if (n == 0) return 0;
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace carasolve
