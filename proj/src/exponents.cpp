#include "renyikit/exponents.hpp"

#include <cmath>
#include <functional>

#include "renyikit/classic.hpp"
#include "renyikit/numerics.hpp"
#include "renyikit/order.hpp"
#include "renyikit/two_param.hpp"

namespace renyikit {

Rate::Rate(double bits) : bits_(bits) {
  if (!(bits >= 0.0) || !std::isfinite(bits)) {
    throw InvalidRate("rate must be a finite non-negative number of bits, got " +
                      format_double(bits));
  }
}

const char* to_string(ExponentBranch b) {
  return b == ExponentBranch::beta_lt_1 ? "beta_lt_1" : "beta_ge_1";
}

double alpha_weight(double alpha, double beta) {
  return beta * (1.0 - alpha) / (alpha * (1.0 - beta));
}

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidOrder("beta must be finite and positive, got " + format_double(beta));
  }
}

void check_beta_below_one(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw InvalidOrder("the dual forms need beta in (0, 1), got " + format_double(beta));
  }
}

struct AlphaMax {
  double value;
  double alpha;
};

// max over alpha in [beta, 1] of phi, with phi(1) = 0 supplied analytically.
AlphaMax maximize_over_alpha(double beta, const ExponentConfig& cfg,
                             const std::function<double(double)>& phi) {
  auto eval = [&](double a) { return a >= 1.0 ? 0.0 : phi(a); };
  std::vector<double> alphas;
  for (std::size_t k = 0;; ++k) {
    const double a = beta + static_cast<double>(k) * cfg.alpha_grid_step;
    if (!(a < 1.0)) break;
    alphas.push_back(a);
  }
  alphas.push_back(1.0);
  std::size_t best = 0;
  double best_v = -kInf;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const double v = eval(alphas[k]);
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  AlphaMax out{best_v, alphas[best]};
  if (best + 1 == alphas.size()) return out;

  double lo = best > 0 ? alphas[best - 1] : beta;
  double hi = alphas[best + 1];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = eval(c), fd = eval(d);
  while (hi - lo > cfg.golden_tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = eval(d);
    }
  }
  const double a = fc >= fd ? c : d;
  const double v = std::max(fc, fd);
  if (v > out.value) out = {v, a};
  return out;
}

RelEntropyTerms dual_base(double beta) {
  return {.joint = beta / (1.0 - beta), .marginal_y = 1.0};
}

}  // namespace

ExponentResult pa_exponent(const JointPmf& joint, double beta, Rate rate,
                           const ExponentConfig& cfg) {
  check_beta(beta);
  const double r = rate.bits();
  ExponentResult out;
  if (beta >= 1.0) {
    out.branch = ExponentBranch::beta_ge_1;
    const double h = cond_entropy_variant(CondEntropyVariant::H, joint,
                                          ExtOrder::from_value(beta)).value;
    out.value = pos_part(r - h);
    return out;
  }
  out.branch = ExponentBranch::beta_lt_1;
  const auto best = maximize_over_alpha(beta, cfg, [&](double a) {
    return alpha_weight(a, beta) * (r - h_tilde(joint, a, beta).value);
  });
  out.value = best.value;
  out.arg_alpha = best.alpha;
  if (cfg.compute_dual) {
    const auto dual = pa_dual_exponent(joint, beta, rate, cfg.solver);
    out.dual_value = dual.value;
    out.dual_argmin = dual.clipped.argmin;
    out.dual_gap = dual.clipped.gap;
  }
  return out;
}

ExponentResult sc_exponent(const JointPmf& joint, double beta, Rate rate,
                           const ExponentConfig& cfg) {
  check_beta(beta);
  const double r = rate.bits();
  ExponentResult out;
  if (beta >= 1.0) {
    out.branch = ExponentBranch::beta_ge_1;
    const double i = mutual_info_variant(MutualInfoVariant::I, joint,
                                         ExtOrder::from_value(beta)).value;
    out.value = pos_part(i - r);
    return out;
  }
  out.branch = ExponentBranch::beta_lt_1;
  const auto best = maximize_over_alpha(beta, cfg, [&](double a) {
    return alpha_weight(a, beta) * (i_tilde(joint, a, beta).value - r);
  });
  out.value = best.value;
  out.arg_alpha = best.alpha;
  if (cfg.compute_dual) {
    const auto dual = sc_dual_exponent(joint, beta, rate, cfg.solver);
    out.dual_value = dual.minimum;
    out.dual_argmin = dual.argmin;
    out.dual_gap = dual.gap;
  }
  return out;
}

PaDualResult pa_dual_exponent(const JointPmf& joint, double beta, Rate rate,
                              const SolverConfig& cfg) {
  check_beta_below_one(beta);
  const double r = rate.bits();
  const RelEntropyTerms f = dual_base(beta);
  // g = R - H(X|Y)_Q
  const RelEntropyTerms g{.cond_entropy = -1.0, .constant = r};

  OptReport clipped = minimize_clipped(joint, f, g, cfg);
  std::optional<OptReport> g1;
  if (r < std::log2(static_cast<double>(joint.nx()))) {
    g1 = minimize_constrained(joint, f, g, cfg);
  }
  OptReport g2 = minimize_on_superlevel(joint, f, g, cfg);
  const double g1v = g1 ? g1->minimum : kInf;
  PaDualResult out{std::move(g1), std::move(g2), clipped, 0.0, clipped.minimum};
  out.piecewise_min = std::min(g1v, out.g2.minimum);
  return out;
}

OptReport sc_dual_exponent(const JointPmf& joint, double beta, Rate rate,
                           const SolverConfig& cfg) {
  check_beta_below_one(beta);
  const RelEntropyTerms g{.cond_div = 1.0, .constant = -rate.bits()};
  return minimize_clipped(joint, dual_base(beta), g, cfg);
}

double one_shot_pa_lower_bound(const JointPmf& joint, double beta, double alpha) {
  if (!(beta > 0.0) || !(beta < 1.0) || !(alpha >= beta) || !(alpha < 1.0)) {
    throw InvalidOrder("one-shot bound needs 0 < beta <= alpha < 1");
  }
  return alpha_weight(alpha, beta) *
         (std::log2(static_cast<double>(joint.nx())) - h_tilde(joint, alpha, beta).value);
}

}  // namespace renyikit
