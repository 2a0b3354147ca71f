#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace renyikit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// |x|^+ = max{x, 0}.
inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }

/// Neumaier-compensated sum.
inline double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

/// log2(sum_i 2^{e_i}) with max shift. Entries equal to -inf are skipped;
/// returns -inf for an empty or all -inf input.
inline double log2_sum_exp2(std::span<const double> exponents) {
  double top = -kInf;
  for (double e : exponents) top = std::max(top, e);
  if (top == -kInf) return -kInf;
  if (top == kInf) return kInf;
  double acc = 0.0;
  for (double e : exponents) {
    if (e != -kInf) acc += std::exp2(e - top);
  }
  return top + std::log2(acc);
}

/// x log2 x with 0 log 0 = 0.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace renyikit
