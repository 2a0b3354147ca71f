#pragma once

// Strong-converse exponents for privacy amplification (PA) and soft
// covering (SC): closed-form maximization over alpha, and the dual
// minimization over joints Q_XY.

#include <optional>

#include "renyikit/dist.hpp"
#include "renyikit/simplex_opt.hpp"

namespace renyikit {

/// Rate in bits per symbol, R >= 0.
class Rate {
 public:
  explicit Rate(double bits);
  double bits() const { return bits_; }

 private:
  double bits_;
};

struct ExponentConfig {
  double alpha_grid_step = 1e-3;
  /// Also run the dual minimization (beta < 1 only).
  bool compute_dual = false;
  SolverConfig solver;
  /// Interval width at which golden-section refinement stops.
  double golden_tol = 1e-9;
};

enum class ExponentBranch { beta_lt_1, beta_ge_1 };
const char* to_string(ExponentBranch b);

struct ExponentResult {
  double value = 0.0;
  /// Maximizing alpha in [beta, 1] (beta < 1). Ties go to the smaller alpha.
  std::optional<double> arg_alpha;
  std::optional<double> dual_value;
  std::optional<JointPmf> dual_argmin;
  /// Certified gap of the dual solve.
  std::optional<double> dual_gap;
  ExponentBranch branch = ExponentBranch::beta_ge_1;
};

/// beta (1 - alpha) / (alpha (1 - beta)).
double alpha_weight(double alpha, double beta);

/// beta < 1: max_{alpha in [beta, 1]} w(alpha) (R - H~_{alpha,beta}(X|Y));
/// beta >= 1: |R - H_beta(X|Y)|^+.
ExponentResult pa_exponent(const JointPmf& joint, double beta, Rate rate,
                           const ExponentConfig& cfg = {});

/// beta < 1: max_{alpha in [beta, 1]} w(alpha) (I~_{alpha,beta}(X:Y) - R);
/// beta >= 1: |I_beta(X:Y) - R|^+.
ExponentResult sc_exponent(const JointPmf& joint, double beta, Rate rate,
                           const ExponentConfig& cfg = {});

struct PaDualResult {
  /// inf over {H(X|Y)_Q > R} of D(Q_Y||P_Y) + beta/(1-beta) D(Q||P); +inf if empty.
  std::optional<OptReport> g1;
  /// inf over {H(X|Y)_Q <= R} of the same plus R - H(X|Y)_Q.
  OptReport g2;
  /// Unconstrained minimum of D(Q_Y||P_Y) + beta/(1-beta) D(Q||P) + |R - H(X|Y)_Q|^+.
  OptReport clipped;
  /// min{g1, g2} from the two pieces.
  double piecewise_min = 0.0;
  /// Certified value (clipped.minimum).
  double value = 0.0;
};

/// Requires beta in (0, 1).
PaDualResult pa_dual_exponent(const JointPmf& joint, double beta, Rate rate,
                              const SolverConfig& cfg = {});

/// min over Q of D(Q_Y||P_Y) + beta/(1-beta) D(Q||P) + |D(Q_{X|Y}||P_X|Q_Y) - R|^+.
/// Requires beta in (0, 1).
OptReport sc_dual_exponent(const JointPmf& joint, double beta, Rate rate,
                           const SolverConfig& cfg = {});

/// w(alpha) (log|X| - H~_{alpha,beta}(X|Y)), a lower bound on
/// D_beta(P_XY || uniform_X x P_Y). Requires 0 < beta <= alpha < 1.
double one_shot_pa_lower_bound(const JointPmf& joint, double beta, double alpha);

}  // namespace renyikit
