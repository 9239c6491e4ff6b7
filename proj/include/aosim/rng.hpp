// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "aosim/common.hpp"

namespace aosim {

/// Seedable generator with stdlib-independent uniform draws, so that a given
/// seed reproduces the same stream on every platform and libstdc++ version.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] by rejection-free scaling (hi - lo small).
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }

  bool coin() { return (gen_() & 1u) != 0; }

  Vector3d unit_vector() {
    // Marsaglia rejection on the unit ball, then normalize.
    for (;;) {
      Vector3d v(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
      const double n2 = v.squaredNorm();
      if (n2 > 1e-8 && n2 <= 1.0) return v / std::sqrt(n2);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace aosim
