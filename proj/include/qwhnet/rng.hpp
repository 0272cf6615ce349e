// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qwhnet {

/// Draw sites. Each site gets its own substream so the number of values
/// consumed at one site never shifts the values seen at another.
enum class DrawSite : std::uint64_t {
  kEigenphases = 0,
  kBasisMatrix = 1,
  kInputVector = 2,
  kMeasurement = 3,
};

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Seeded random stream: an mt19937_64 engine plus hand-rolled samplers, so
/// every value depends only on (seed, site) and the draw order, not on the
/// standard library's distribution internals.
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, DrawSite site)
      : engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(site) + 0x51ul))) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double gaussian() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Binomial(trials, p) by direct Bernoulli counting; trial counts stay small here.
  int binomial(int trials, double p) {
    int hits = 0;
    for (int i = 0; i < trials; ++i) {
      if (uniform() < p) ++hits;
    }
    return hits;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qwhnet
