#pragma once

// Shared generators for the test suite. Everything is seeded through
// SplitMix64 so a failing case reproduces bit-for-bit on any machine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ringloc/image.hpp"
#include "ringloc/radon.hpp"
#include "ringloc/synth.hpp"

namespace ringloc::testutil {

/// Random soft-edged blobs confined to a disc of radius `max_r` about the
/// raster center. The one-pixel linear falloff keeps the content band-limited
/// enough that interpolation artifacts stay far below the tolerances under
/// test; hard speckle would measure the interpolator, not the transform.
inline Image blob_image(int side, std::uint64_t seed, double max_r) {
  SplitMix64 rng(seed);
  Image img(side, side);
  const double c = 0.5 * (side - 1);
  const int n_blobs = 12 + static_cast<int>(rng.next() % 8);
  for (int b = 0; b < n_blobs; ++b) {
    const double ang = rng.uniform(0.0, 2.0 * kPi);
    const double rad = max_r * std::sqrt(rng.uniform());
    const double bx = c + rad * std::cos(ang);
    const double by = c + rad * std::sin(ang);
    const double br = rng.uniform(2.0, 4.5);
    const double amp = rng.uniform(0.5, 1.5);
    const int lo = static_cast<int>(std::floor(-br - 1));
    for (int oy = lo; oy <= -lo; ++oy) {
      for (int ox = lo; ox <= -lo; ++ox) {
        const int x = static_cast<int>(bx) + ox;
        const int y = static_cast<int>(by) + oy;
        if (x < 0 || x >= side || y < 0 || y >= side) continue;
        const double d = std::hypot(x - bx, y - by);
        const double cov = std::clamp(br + 0.5 - d, 0.0, 1.0);
        img.data[static_cast<std::size_t>(y) * side + x] += amp * cov;
      }
    }
  }
  return img;
}

/// Uniform binary speckle at the given fill density.
inline Image binary_image(int side, std::uint64_t seed, double density) {
  SplitMix64 rng(seed);
  Image img(side, side);
  for (double& v : img.data) v = rng.uniform() < density ? 1.0 : 0.0;
  return img;
}

inline double rel_frobenius(const std::vector<double>& a,
                            const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    num += d * d;
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

/// Circular distance between two row-shift indices.
inline int ring_dist(int a, int b, int n) {
  const int d = ((a - b) % n + n) % n;
  return std::min(d, n - d);
}

}  // namespace ringloc::testutil
