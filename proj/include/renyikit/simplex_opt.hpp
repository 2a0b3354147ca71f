#pragma once

// Minimization of relative-entropy objectives over joint distributions Q_XY
// supported inside supp(P_XY): barycentric grid search followed by entropic
// mirror descent.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "renyikit/dist.hpp"

namespace renyikit {

/// Linear combination, in bits, of
///   joint        D(Q_XY || P_XY)
///   marginal_y   D(Q_Y || P_Y)
///   cond_entropy H(X|Y)_Q
///   cond_div     D(Q_{X|Y} || P_X | Q_Y)
/// plus a constant. P_X, P_Y are marginals of the reference joint.
struct RelEntropyTerms {
  double joint = 0.0;
  double marginal_y = 0.0;
  double cond_entropy = 0.0;
  double cond_div = 0.0;
  double constant = 0.0;

  RelEntropyTerms operator+(const RelEntropyTerms& o) const;
  RelEntropyTerms operator*(double s) const;
};

struct TermValues {
  double joint;
  double marginal_y;
  double cond_entropy;
  double cond_div;
  double combine(const RelEntropyTerms& t) const;
};

/// The four building blocks at Q (row-major |X| x |Y|).
TermValues term_values(const JointPmf& reference, std::span<const double> q);

struct SimplexObjective {
  std::size_t nx = 0;
  std::size_t ny = 0;
  Labels alphabet_x;
  Labels alphabet_y;
  /// Cells that may carry mass; all others are pinned at zero.
  std::vector<char> active;
  std::function<double(std::span<const double>)> value;
  /// Partial derivatives in bits, written for active cells.
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  bool convex = true;
  /// Bound on |gradient| over the interior shrunk by the solver margin.
  double lipschitz = 0.0;
  std::string name;
};

/// Objective over Q restricted to supp(reference).
SimplexObjective make_objective(const JointPmf& reference, const RelEntropyTerms& terms,
                                std::string name = {}, double interior_margin = 1e-6);

enum class OptMethod { grid, mirror_descent, grid_refine };
const char* to_string(OptMethod m);

struct SolverConfig {
  std::size_t grid_subdivisions = 8;
  /// Subdivisions are reduced until the grid has at most this many points.
  std::size_t grid_point_budget = 250'000;
  std::size_t dimension_cap = 36;
  std::size_t starts = 5;
  double step0 = 0.1;
  double step_tol = 1e-10;
  std::size_t max_iterations = 10'000;
  double interior_margin = 1e-6;
  bool use_grid = true;
  /// Maximum multiplier updates in the clipped / constrained solvers.
  std::size_t multiplier_iterations = 60;
};

struct OptReport {
  double minimum = 0.0;
  JointPmf argmin;
  OptMethod method = OptMethod::grid_refine;
  /// Certified: minimum - gap <= true infimum (convex objectives).
  double gap = 0.0;
  std::size_t iterations = 0;
  std::size_t rejected_steps = 0;
  std::size_t grid_points = 0;
  std::size_t grid_subdivisions = 0;
  /// False for best-effort results on non-convex problems.
  bool certified = true;
};

/// Throws DimensionCap when the active cell count exceeds cfg.dimension_cap
/// and NonFiniteObjectiveEverywhere when no evaluated point is finite.
/// Extra starting points (row-major, strictly positive on active cells) may
/// be supplied; with cfg.use_grid == false they are the only starts.
OptReport minimize_over_joint(const SimplexObjective& obj, const SolverConfig& cfg = {},
                              std::span<const std::vector<double>> warm_starts = {});

/// min over Q of f(Q) + |g(Q)|^+ for convex f, g, solved through the
/// multiplier form max_{l in [0,1]} min_Q f + l g.
OptReport minimize_clipped(const JointPmf& reference, const RelEntropyTerms& f,
                           const RelEntropyTerms& g, const SolverConfig& cfg = {});

/// min over {Q : g(Q) <= 0} of f(Q) for convex f, g. Returns nullopt when no
/// multiplier up to 1e6 reaches feasibility.
std::optional<OptReport> minimize_constrained(const JointPmf& reference,
                                              const RelEntropyTerms& f,
                                              const RelEntropyTerms& g,
                                              const SolverConfig& cfg = {});

/// min over {Q : g(Q) >= 0} of f(Q) + g(Q) for convex f, g. The feasible set
/// is generally not convex: multi-start search, reported uncertified unless
/// the clipped minimum already lies in the set.
OptReport minimize_on_superlevel(const JointPmf& reference, const RelEntropyTerms& f,
                                 const RelEntropyTerms& g, const SolverConfig& cfg = {});

/// Objective whose minimum over Q equals (alpha - 1) H~_{alpha,beta}(X|Y):
///   alpha(1-beta)/beta D(Q_Y||P_Y) + alpha D(Q||P) + (alpha-1) H(X|Y)_Q.
RelEntropyTerms variational_h_terms(double alpha, double beta);
/// Objective whose minimum equals (1 - alpha) I~_{alpha,beta}(X:Y):
///   alpha(1-beta)/beta D(Q_Y||P_Y) + alpha D(Q||P) + (1-alpha) D(Q_{X|Y}||P_X|Q_Y).
RelEntropyTerms variational_i_terms(double alpha, double beta);

/// Throw InvalidOrder unless alpha, beta are finite and positive.
OptReport variational_h(const JointPmf& joint, double alpha, double beta,
                        const SolverConfig& cfg = {});
OptReport variational_i(const JointPmf& joint, double alpha, double beta,
                        const SolverConfig& cfg = {});

}  // namespace renyikit
