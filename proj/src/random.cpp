#include "renyikit/random.hpp"

#include <cmath>

#include "renyikit/numerics.hpp"

namespace renyikit {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t t = a ^ (index * 0xd1b54a32d192ed03ULL);
  return splitmix64(t);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

double Rng::exponential() { return -std::log1p(-uniform01()); }

std::vector<double> random_simplex_point(Rng& rng, std::size_t k,
                                         double zero_prob) {
  std::vector<double> w(k);
  bool any = false;
  for (auto& v : w) {
    const bool zero = zero_prob > 0.0 && rng.uniform01() < zero_prob;
    v = zero ? 0.0 : rng.exponential();
    // exponential() can return exactly 0 with probability 2^-53; treat it
    // as a forced zero.
    any = any || v > 0.0;
  }
  if (!any) w[rng.below(k)] = 1.0;
  const double s = compensated_sum(w);
  for (auto& v : w) v /= s;
  return w;
}

Pmf random_pmf(Rng& rng, std::size_t k, double zero_prob) {
  return Pmf::make(random_simplex_point(rng, k, zero_prob));
}

JointPmf random_joint(Rng& rng, std::size_t nx, std::size_t ny,
                      double zero_prob) {
  return JointPmf::make(nx, ny, random_simplex_point(rng, nx * ny, zero_prob));
}

CondPmf random_channel(Rng& rng, std::size_t n_in, std::size_t n_out,
                       double zero_prob) {
  std::vector<std::vector<double>> rows;
  rows.reserve(n_in);
  for (std::size_t i = 0; i < n_in; ++i) {
    rows.push_back(random_simplex_point(rng, n_out, zero_prob));
  }
  return CondPmf::make(rows);
}

}  // namespace renyikit
