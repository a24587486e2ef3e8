// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_RNG_HPP
#define PXLAP_RNG_HPP

#include <cstdint>

namespace pxlap {

/// Deterministic 64-bit generator (splitmix64). Used everywhere a seeded
/// stream is needed so that artifacts are bit-reproducible across platforms,
/// independent of the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform double in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

private:
  std::uint64_t state_;
};

/// Radical-inverse (van der Corput) value of index n in the given base.
inline double radical_inverse(std::uint64_t n, unsigned base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return r;
}

/// Halton point in [0,1)^dim (dim <= 6), index n >= 1.
inline void halton_point(std::uint64_t n, int dim, double* out) {
  static constexpr unsigned bases[6] = {2, 3, 5, 7, 11, 13};
  for (int d = 0; d < dim; ++d) out[d] = radical_inverse(n, bases[d]);
}

} // namespace pxlap

#endif
