#pragma once

// Seeded random objects. All draws are defined in terms of raw 64-bit
// mt19937_64 output so streams are identical across standard libraries.

#include <cstdint>
#include <random>

#include "renyikit/dist.hpp"

namespace renyikit {

/// One step of SplitMix64; advances state.
std::uint64_t splitmix64(std::uint64_t& state);

/// Independent stream seed for task `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);
  /// Standard exponential.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

/// Dirichlet(1, ..., 1) vector; each entry is independently forced to zero
/// with probability zero_prob (at least one entry stays positive).
std::vector<double> random_simplex_point(Rng& rng, std::size_t k,
                                         double zero_prob = 0.0);

Pmf random_pmf(Rng& rng, std::size_t k, double zero_prob = 0.0);
JointPmf random_joint(Rng& rng, std::size_t nx, std::size_t ny,
                      double zero_prob = 0.0);
/// Channel with every row drawn independently.
CondPmf random_channel(Rng& rng, std::size_t n_in, std::size_t n_out,
                       double zero_prob = 0.0);

}  // namespace renyikit
