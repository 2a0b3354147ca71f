#pragma once

// Two-parameter conditional entropy H~_{a,b}(X|Y) and mutual information
// I~_{a,b}(X:Y) on the extended square [0, inf]^2.

#include <string>

#include "renyikit/dist.hpp"
#include "renyikit/order.hpp"

namespace renyikit {

enum class TwoParamBranch {
  generic,
  alpha_one,
  alpha_zero,
  alpha_zero_beta_zero,
  alpha_inf,
  beta_zero,
  beta_inf,
};

const char* to_string(TwoParamBranch b);

struct TwoParamResult {
  double value;
  TwoParamBranch branch;
  OrderPair order;
  /// Set at (0, 0), where the returned value is the beta -> 0 then
  /// alpha -> 0 iterated limit and other paths disagree.
  bool corner_warning = false;
};

struct TwoParamOptions {
  /// Reject (0, 0) with UndefinedCorner instead of returning the iterated limit.
  bool strict_corner = false;
};

/// Throws UndefinedCorner at (1, inf), and at (0, 0) in strict mode.
TwoParamResult h_tilde(const JointPmf& joint, const OrderPair& order,
                       const TwoParamOptions& opts = {});
TwoParamResult i_tilde(const JointPmf& joint, const OrderPair& order,
                       const TwoParamOptions& opts = {});

/// Convenience overloads taking plain values (0, 1, inf map to tags).
TwoParamResult h_tilde(const JointPmf& joint, double alpha, double beta,
                       const TwoParamOptions& opts = {});
TwoParamResult i_tilde(const JointPmf& joint, double alpha, double beta,
                       const TwoParamOptions& opts = {});

}  // namespace renyikit
