#pragma once

// Cached marginals of a joint, shared by the measure implementations.

#include <cmath>
#include <vector>

#include "renyikit/dist.hpp"
#include "renyikit/numerics.hpp"

namespace renyikit::detail {

struct JointView {
  explicit JointView(const JointPmf& j) : joint(j), nx(j.nx()), ny(j.ny()) {
    px.resize(nx);
    py.assign(ny, 0.0);
    std::vector<double> column(nx);
    for (std::size_t x = 0; x < nx; ++x) px[x] = compensated_sum(j.row(x));
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) column[x] = j(x, y);
      py[y] = compensated_sum(column);
    }
  }

  double p(std::size_t x, std::size_t y) const { return joint(x, y); }
  /// P_{X|Y}(x|y); only meaningful for py[y] > 0.
  double cond(std::size_t x, std::size_t y) const { return joint(x, y) / py[y]; }
  /// Row P_{X|y} as a dense vector.
  std::vector<double> cond_row(std::size_t y) const {
    std::vector<double> r(nx);
    for (std::size_t x = 0; x < nx; ++x) r[x] = cond(x, y);
    return r;
  }

  const JointPmf& joint;
  std::size_t nx;
  std::size_t ny;
  std::vector<double> px;
  std::vector<double> py;
};

}  // namespace renyikit::detail
