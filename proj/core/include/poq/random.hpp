#pragma once

// Draw helpers over std::mt19937_64 with fixed arithmetic, so a seed yields
// the same sequence with every standard library (the std distributions are
// implementation-defined).

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace poq::rnd {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in [0, n); n > 0.
inline std::size_t index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

/// Uniform in [lo, hi].
inline std::int64_t between(std::mt19937_64& rng, std::int64_t lo,
                            std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool chance(std::mt19937_64& rng, double p) {
  return uniform01(rng) < p;
}

/// Index drawn proportionally to non-negative weights (at least one > 0).
inline std::size_t weighted(std::mt19937_64& rng,
                            std::span<const double> weights) {
  double total = 0;
  for (double w : weights) total += w;
  double x = uniform01(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0) return i;
  return 0;
}

}  // namespace poq::rnd
