#pragma once

#include <cstdint>
#include <cmath>

#include "minkgeo/linalg.hpp"

// Counter-based sampling. Every draw is a pure function of (seed, index, slot),
// so sampled suites produce identical streams no matter how work is chunked
// across threads.
namespace minkgeo::rng {

inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  return mix(mix(mix(seed) ^ (index * 0xd1342543de82ef95ULL)) ^ (slot * 0xaf251af3b0f025b5ULL));
}

// open interval (0,1); never returns an exact endpoint
inline double u01(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  return (static_cast<double>(key(seed, index, slot) >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t slot, double lo, double hi) {
  return lo + (hi - lo) * u01(seed, index, slot);
}

inline double normal(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  double u1 = u01(seed, index, 2 * slot);
  double u2 = u01(seed, index, 2 * slot + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// uniform direction on the Euclidean unit sphere
inline Vec sphere(std::uint64_t seed, std::uint64_t index, int n, std::uint64_t slot_base = 0) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Vec v(n);
    double q = 0.0;
    for (int k = 0; k < n; ++k) {
      v[k] = normal(seed, index, slot_base + attempt * (n + 1) + k);
      q += v[k] * v[k];
    }
    if (q > 1e-24) {
      double inv = 1.0 / std::sqrt(q);
      for (double& x : v) x *= inv;
      return v;
    }
  }
}

inline Vec box_point(std::uint64_t seed, std::uint64_t index, int n, double halfwidth,
                     std::uint64_t slot_base = 0) {
  Vec v(n);
  for (int k = 0; k < n; ++k) v[k] = uniform(seed, index, slot_base + k, -halfwidth, halfwidth);
  return v;
}

}  // namespace minkgeo::rng
