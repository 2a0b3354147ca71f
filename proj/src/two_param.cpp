#include "renyikit/two_param.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "joint_view.hpp"
#include "renyikit/classic.hpp"
#include "renyikit/numerics.hpp"

namespace renyikit {

using detail::JointView;

const char* to_string(TwoParamBranch b) {
  switch (b) {
    case TwoParamBranch::generic: return "generic";
    case TwoParamBranch::alpha_one: return "alpha_one";
    case TwoParamBranch::alpha_zero: return "alpha_zero";
    case TwoParamBranch::alpha_zero_beta_zero: return "alpha_zero_beta_zero";
    case TwoParamBranch::alpha_inf: return "alpha_inf";
    case TwoParamBranch::beta_zero: return "beta_zero";
    case TwoParamBranch::beta_inf: return "beta_inf";
  }
  return "?";
}

namespace {

TwoParamBranch select_branch(const OrderPair& o, const TwoParamOptions& opts,
                             const char* what) {
  if (o.is_undefined_corner()) {
    throw UndefinedCorner(std::string(what) +
                          " is undefined at (alpha, beta) = (1, inf)");
  }
  if (o.is_discontinuity_corner()) {
    if (opts.strict_corner) {
      throw UndefinedCorner(std::string(what) +
                            " is discontinuous at (alpha, beta) = (0, 0); "
                            "strict mode rejects the iterated-limit value");
    }
    return TwoParamBranch::alpha_zero_beta_zero;
  }
  if (o.alpha.is_one()) return TwoParamBranch::alpha_one;
  if (o.alpha.is_zero()) return TwoParamBranch::alpha_zero;
  if (o.alpha.is_inf()) return TwoParamBranch::alpha_inf;
  if (o.beta.is_zero()) return TwoParamBranch::beta_zero;
  if (o.beta.is_inf()) return TwoParamBranch::beta_inf;
  return TwoParamBranch::generic;
}

double log2_support_size(const JointView& v, std::size_t y) {
  std::size_t n = 0;
  for (std::size_t x = 0; x < v.nx; ++x) n += v.p(x, y) > 0.0 ? 1 : 0;
  return std::log2(static_cast<double>(n));
}

// log2 of the largest conditional mass in column y.
double log2_peak(const JointView& v, std::size_t y) {
  double m = 0.0;
  for (std::size_t x = 0; x < v.nx; ++x) m = std::max(m, v.p(x, y));
  return std::log2(m) - std::log2(v.py[y]);
}

// s_y = P_X(supp P_{X|y}).
double covered_mass(const JointView& v, std::size_t y) {
  std::vector<double> mass;
  for (std::size_t x = 0; x < v.nx; ++x) {
    if (v.p(x, y) > 0.0) mass.push_back(v.px[x]);
  }
  return compensated_sum(mass);
}

// log2 max_x P_{X|y}(x) / P_X(x) over the support of column y.
double log2_peak_ratio(const JointView& v, std::size_t y) {
  double best = -kInf;
  for (std::size_t x = 0; x < v.nx; ++x) {
    if (!(v.p(x, y) > 0.0)) continue;
    if (!(v.px[x] > 0.0)) return kInf;
    best = std::max(best, std::log2(v.p(x, y)) - std::log2(v.py[y]) -
                              std::log2(v.px[x]));
  }
  return best;
}

double weighted_sum_over_y(const JointView& v, auto&& f) {
  std::vector<double> terms;
  for (std::size_t y = 0; y < v.ny; ++y) {
    if (v.py[y] > 0.0) terms.push_back(v.py[y] * f(y));
  }
  return compensated_sum(terms);
}

// log2 sum_y P_Y(y) 2^{g(y)} over supp(P_Y).
double log2_weighted_power_sum(const JointView& v, auto&& g) {
  std::vector<double> exps;
  for (std::size_t y = 0; y < v.ny; ++y) {
    if (v.py[y] > 0.0) exps.push_back(std::log2(v.py[y]) + g(y));
  }
  return log2_sum_exp2(exps);
}

double max_over_y(const JointView& v, auto&& f) {
  double best = -kInf;
  for (std::size_t y = 0; y < v.ny; ++y) {
    if (v.py[y] > 0.0) best = std::max(best, f(y));
  }
  return best;
}

}  // namespace

TwoParamResult h_tilde(const JointPmf& joint, const OrderPair& order,
                       const TwoParamOptions& opts) {
  const TwoParamBranch branch = select_branch(order, opts, "H~");
  const JointView v(joint);
  TwoParamResult r{0.0, branch, order, false};
  const ExtOrder& a = order.alpha;
  const ExtOrder& b = order.beta;
  switch (branch) {
    case TwoParamBranch::alpha_zero_beta_zero:
      r.corner_warning = true;
      r.value = weighted_sum_over_y(v, [&](std::size_t y) {
        return log2_support_size(v, y);
      });
      break;
    case TwoParamBranch::alpha_one:
      r.value = shannon_cond_entropy(joint);
      break;
    case TwoParamBranch::alpha_zero:
      r.value = max_over_y(v, [&](std::size_t y) { return log2_support_size(v, y); });
      break;
    case TwoParamBranch::alpha_inf:
      if (b.is_zero()) {
        r.value = -weighted_sum_over_y(v, [&](std::size_t y) { return log2_peak(v, y); });
      } else if (b.is_inf()) {
        r.value = -max_over_y(v, [&](std::size_t y) { return log2_peak(v, y); });
      } else {
        const double beta = b.value();
        r.value = -log2_weighted_power_sum(v, [&](std::size_t y) {
                    return beta * log2_peak(v, y);
                  }) / beta;
      }
      break;
    case TwoParamBranch::beta_zero:
      r.value = cond_entropy_variant(CondEntropyVariant::Hbar, joint, a).value;
      break;
    case TwoParamBranch::beta_inf:
      r.value = cond_entropy_variant(CondEntropyVariant::HbarStar, joint, a).value;
      break;
    case TwoParamBranch::generic: {
      const double alpha = a.value();
      const double beta = b.value();
      std::vector<double> inner;
      const double l = log2_weighted_power_sum(v, [&](std::size_t y) {
        inner.clear();
        const double lpy = std::log2(v.py[y]);
        for (std::size_t x = 0; x < v.nx; ++x) {
          if (v.p(x, y) > 0.0) inner.push_back(alpha * (std::log2(v.p(x, y)) - lpy));
        }
        return beta / alpha * log2_sum_exp2(inner);
      });
      r.value = alpha / (beta * (1.0 - alpha)) * l;
      break;
    }
  }
  return r;
}

TwoParamResult i_tilde(const JointPmf& joint, const OrderPair& order,
                       const TwoParamOptions& opts) {
  const TwoParamBranch branch = select_branch(order, opts, "I~");
  const JointView v(joint);
  TwoParamResult r{0.0, branch, order, false};
  const ExtOrder& a = order.alpha;
  const ExtOrder& b = order.beta;
  switch (branch) {
    case TwoParamBranch::alpha_zero_beta_zero:
      r.corner_warning = true;
      r.value = -weighted_sum_over_y(v, [&](std::size_t y) {
        return std::log2(covered_mass(v, y));
      });
      break;
    case TwoParamBranch::alpha_one:
      r.value = shannon_mutual_info(joint);
      break;
    case TwoParamBranch::alpha_zero:
      r.value = -max_over_y(v, [&](std::size_t y) {
        return std::log2(covered_mass(v, y));
      });
      break;
    case TwoParamBranch::alpha_inf:
      if (b.is_zero()) {
        r.value = weighted_sum_over_y(v, [&](std::size_t y) {
          return log2_peak_ratio(v, y);
        });
      } else if (b.is_inf()) {
        r.value = max_over_y(v, [&](std::size_t y) { return log2_peak_ratio(v, y); });
      } else {
        const double beta = b.value();
        r.value = log2_weighted_power_sum(v, [&](std::size_t y) {
                    return beta * log2_peak_ratio(v, y);
                  }) / beta;
      }
      break;
    case TwoParamBranch::beta_zero:
      r.value = mutual_info_variant(MutualInfoVariant::Ibar, joint, a).value;
      break;
    case TwoParamBranch::beta_inf:
      r.value = mutual_info_variant(MutualInfoVariant::IbarStar, joint, a).value;
      break;
    case TwoParamBranch::generic: {
      const double alpha = a.value();
      const double beta = b.value();
      bool infinite = false;
      std::vector<double> inner;
      const double l = log2_weighted_power_sum(v, [&](std::size_t y) {
        inner.clear();
        const double lpy = std::log2(v.py[y]);
        for (std::size_t x = 0; x < v.nx; ++x) {
          if (!(v.p(x, y) > 0.0)) continue;
          // a/0 = inf: only reachable with a reference other than the marginal.
          if (!(v.px[x] > 0.0)) {
            if (alpha > 1.0) infinite = true;
            continue;
          }
          inner.push_back((1.0 - alpha) * std::log2(v.px[x]) +
                          alpha * (std::log2(v.p(x, y)) - lpy));
        }
        return beta / alpha * log2_sum_exp2(inner);
      });
      r.value = infinite ? kInf : alpha / (beta * (alpha - 1.0)) * l;
      break;
    }
  }
  return r;
}

TwoParamResult h_tilde(const JointPmf& joint, double alpha, double beta,
                       const TwoParamOptions& opts) {
  return h_tilde(joint, {ExtOrder::from_value(alpha), ExtOrder::from_value(beta)},
                 opts);
}

TwoParamResult i_tilde(const JointPmf& joint, double alpha, double beta,
                       const TwoParamOptions& opts) {
  return i_tilde(joint, {ExtOrder::from_value(alpha), ExtOrder::from_value(beta)},
                 opts);
}

}  // namespace renyikit
