#pragma once

#include <cmath>
#include <vector>

#include "renyikit/dist.hpp"
#include "renyikit/random.hpp"

namespace testutil {

inline bool close(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

// Joints of random shape in [2, max_dim]^2; every third one has zeros.
inline std::vector<renyikit::JointPmf> random_joints(std::uint64_t seed,
                                                     std::size_t count,
                                                     std::size_t max_dim = 5) {
  renyikit::Rng rng(seed);
  std::vector<renyikit::JointPmf> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t nx = 2 + rng.below(max_dim - 1);
    const std::size_t ny = 2 + rng.below(max_dim - 1);
    out.push_back(renyikit::random_joint(rng, nx, ny, i % 3 == 2 ? 0.3 : 0.0));
  }
  return out;
}

inline renyikit::JointPmf bsc_joint(double p) {
  return renyikit::JointPmf::make(
      {{0.5 * (1 - p), 0.5 * p}, {0.5 * p, 0.5 * (1 - p)}});
}

inline renyikit::JointPmf diag_uniform(std::size_t k) {
  std::vector<double> flat(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) flat[i * k + i] = 1.0 / double(k);
  return renyikit::JointPmf::make(k, k, flat);
}

inline renyikit::JointPmf uniform_joint(std::size_t nx, std::size_t ny) {
  return renyikit::JointPmf::make(
      nx, ny, std::vector<double>(nx * ny, 1.0 / double(nx * ny)));
}

}  // namespace testutil
