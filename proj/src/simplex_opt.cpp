#include "renyikit/simplex_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "joint_view.hpp"
#include "renyikit/numerics.hpp"

namespace renyikit {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

// Precomputed logs of the reference.
struct Reference {
  explicit Reference(const JointPmf& p) : nx(p.nx()), ny(p.ny()) {
    const detail::JointView v(p);
    log_p.resize(p.cells());
    for (std::size_t i = 0; i < p.cells(); ++i) {
      log_p[i] = p.probs()[i] > 0.0 ? std::log2(p.probs()[i]) : -kInf;
    }
    log_px.resize(nx);
    for (std::size_t x = 0; x < nx; ++x) {
      log_px[x] = v.px[x] > 0.0 ? std::log2(v.px[x]) : -kInf;
    }
    log_py.resize(ny);
    for (std::size_t y = 0; y < ny; ++y) {
      log_py[y] = v.py[y] > 0.0 ? std::log2(v.py[y]) : -kInf;
    }
  }
  std::size_t nx;
  std::size_t ny;
  std::vector<double> log_p;
  std::vector<double> log_px;
  std::vector<double> log_py;
};

TermValues evaluate(const Reference& r, std::span<const double> q) {
  std::vector<double> qy(r.ny, 0.0);
  for (std::size_t x = 0; x < r.nx; ++x) {
    for (std::size_t y = 0; y < r.ny; ++y) qy[y] += q[x * r.ny + y];
  }
  double joint = 0.0, marg = 0.0, hcond = 0.0, dcond = 0.0;
  for (std::size_t y = 0; y < r.ny; ++y) {
    if (!(qy[y] > 0.0)) continue;
    const double lqy = std::log2(qy[y]);
    marg += qy[y] * (lqy - r.log_py[y]);
    for (std::size_t x = 0; x < r.nx; ++x) {
      const double v = q[x * r.ny + y];
      if (!(v > 0.0)) continue;
      const double lq = std::log2(v);
      joint += v * (lq - r.log_p[x * r.ny + y]);
      hcond -= v * (lq - lqy);
      dcond += v * (lq - lqy - r.log_px[x]);
    }
  }
  return {joint, marg, hcond, dcond};
}

void gradient_into(const Reference& r, const RelEntropyTerms& t,
                   std::span<const double> q, std::span<double> g) {
  std::vector<double> qy(r.ny, 0.0);
  for (std::size_t x = 0; x < r.nx; ++x) {
    for (std::size_t y = 0; y < r.ny; ++y) qy[y] += q[x * r.ny + y];
  }
  for (std::size_t x = 0; x < r.nx; ++x) {
    for (std::size_t y = 0; y < r.ny; ++y) {
      const std::size_t i = x * r.ny + y;
      const double lq = q[i] > 0.0 ? std::log2(q[i]) : -kInf;
      const double lqy = qy[y] > 0.0 ? std::log2(qy[y]) : -kInf;
      double d = 0.0;
      if (t.joint != 0.0) d += t.joint * (lq - r.log_p[i] + kInvLn2);
      if (t.marginal_y != 0.0) d += t.marginal_y * (lqy - r.log_py[y] + kInvLn2);
      if (t.cond_entropy != 0.0) d -= t.cond_entropy * (lq - lqy);
      if (t.cond_div != 0.0) d += t.cond_div * (lq - lqy - r.log_px[x]);
      g[i] = d;
    }
  }
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

struct Candidate {
  double value;
  std::vector<double> point;  // over active cells
};

// Keeps the k lowest-value points; ties keep the earlier point.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}
  void offer(double v, const std::vector<double>& p) {
    if (!std::isfinite(v)) return;
    if (best_.size() == k_ && !(v < best_.back().value)) return;
    auto it = std::upper_bound(best_.begin(), best_.end(), v,
                               [](double a, const Candidate& c) { return a < c.value; });
    best_.insert(it, Candidate{v, p});
    if (best_.size() > k_) best_.pop_back();
  }
  const std::vector<Candidate>& items() const { return best_; }

 private:
  std::size_t k_;
  std::vector<Candidate> best_;
};

class Solver {
 public:
  Solver(const SimplexObjective& obj, const SolverConfig& cfg) : obj_(obj), cfg_(cfg) {
    for (std::size_t i = 0; i < obj.active.size(); ++i) {
      if (obj.active[i]) cells_.push_back(i);
    }
    full_.assign(obj.nx * obj.ny, 0.0);
    grad_.assign(obj.nx * obj.ny, 0.0);
  }

  std::size_t dim() const { return cells_.size(); }

  double value(const std::vector<double>& x) {
    scatter(x);
    return obj_.value(full_);
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g) {
    scatter(x);
    obj_.gradient(full_, grad_);
    g.resize(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) g[k] = grad_[cells_[k]];
  }

  // Frank-Wolfe gap sum_i x_i g_i - min_i g_i: bounds f(x) - min f for
  // convex differentiable f.
  double fw_gap(const std::vector<double>& x) {
    std::vector<double> g;
    gradient(x, g);
    double lin = 0.0;
    double lo = kInf;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!std::isfinite(g[k])) return kInf;
      lin += x[k] * g[k];
      lo = std::min(lo, g[k]);
    }
    return std::max(0.0, lin - lo);
  }

  std::size_t grid(std::size_t n, TopK& top) {
    const std::size_t d = dim();
    std::vector<std::size_t> comp(d, 0);
    comp[0] = n;
    std::vector<double> x(d);
    std::size_t count = 0;
    std::size_t h = 0, t = n;
    // compositions of n into d parts (Nijenhuis-Wilf successor rule)
    while (true) {
      for (std::size_t k = 0; k < d; ++k) {
        x[k] = static_cast<double>(comp[k]) / static_cast<double>(n);
      }
      top.offer(value(x), x);
      ++count;
      if (comp[d - 1] == n) break;
      if (t > 1) h = 0;
      ++h;
      t = comp[h - 1];
      comp[h - 1] = 0;
      comp[0] = t - 1;
      comp[h] += 1;
    }
    return count;
  }

  struct Run {
    std::vector<double> x;
    double f;
    std::size_t iterations;
    std::size_t rejected;
  };

  // Entropic mirror descent; the incumbent value never increases.
  Run descend(std::vector<double> x, const std::function<bool(const std::vector<double>&)>& admissible = {}) {
    double fx = value(x);
    double base = cfg_.step0;
    std::vector<double> g, y(x.size());
    std::size_t t = 0, rejected = 0;
    for (; t < cfg_.max_iterations; ++t) {
      gradient(x, g);
      // zero coordinates stay zero under the multiplicative update
      double gmin = kInf;
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] > 0.0) gmin = std::min(gmin, g[k]);
      }
      const double eta = base / (1.0 + static_cast<double>(t) / 100.0);
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        y[k] = x[k] > 0.0 ? x[k] * std::exp2(-eta * (g[k] - gmin)) : 0.0;
        s += y[k];
      }
      for (auto& v : y) v /= s;
      const double fy = value(y);
      if (!(fy <= fx) || (admissible && !admissible(y))) {
        ++rejected;
        base *= 0.5;
        if (base < 1e-18) break;
        continue;
      }
      double step = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) step += std::abs(y[k] - x[k]);
      x.swap(y);
      fx = fy;
      if (step < cfg_.step_tol) break;
    }
    return {std::move(x), fx, t, rejected};
  }

  std::vector<double> gather(std::span<const double> q) const {
    std::vector<double> x(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) x[k] = q[cells_[k]];
    return x;
  }

  std::vector<double> interior(std::vector<double> x, double weight) const {
    const double u = 1.0 / static_cast<double>(x.size());
    for (auto& v : x) v = (1.0 - weight) * v + weight * u;
    return x;
  }

  std::vector<double> scatter_copy(const std::vector<double>& x) {
    scatter(x);
    return full_;
  }

 private:
  void scatter(const std::vector<double>& x) {
    for (std::size_t k = 0; k < cells_.size(); ++k) full_[cells_[k]] = x[k];
  }

  const SimplexObjective& obj_;
  const SolverConfig& cfg_;
  std::vector<std::size_t> cells_;
  std::vector<double> full_;
  std::vector<double> grad_;
};

JointPmf to_joint(const SimplexObjective& obj, std::vector<double> q) {
  const double s = compensated_sum(q);
  for (auto& v : q) v /= s;
  return JointPmf::make(obj.alphabet_x, obj.alphabet_y, std::move(q));
}

}  // namespace

RelEntropyTerms RelEntropyTerms::operator+(const RelEntropyTerms& o) const {
  return {joint + o.joint, marginal_y + o.marginal_y, cond_entropy + o.cond_entropy,
          cond_div + o.cond_div, constant + o.constant};
}

RelEntropyTerms RelEntropyTerms::operator*(double s) const {
  return {joint * s, marginal_y * s, cond_entropy * s, cond_div * s, constant * s};
}

double TermValues::combine(const RelEntropyTerms& t) const {
  double v = t.constant;
  if (t.joint != 0.0) v += t.joint * joint;
  if (t.marginal_y != 0.0) v += t.marginal_y * marginal_y;
  if (t.cond_entropy != 0.0) v += t.cond_entropy * cond_entropy;
  if (t.cond_div != 0.0) v += t.cond_div * cond_div;
  return v;
}

TermValues term_values(const JointPmf& reference, std::span<const double> q) {
  return evaluate(Reference(reference), q);
}

const char* to_string(OptMethod m) {
  switch (m) {
    case OptMethod::grid: return "grid";
    case OptMethod::mirror_descent: return "mirror_descent";
    case OptMethod::grid_refine: return "grid_refine";
  }
  return "?";
}

SimplexObjective make_objective(const JointPmf& reference, const RelEntropyTerms& terms,
                                std::string name, double interior_margin) {
  auto ref = std::make_shared<Reference>(reference);
  SimplexObjective obj;
  obj.nx = reference.nx();
  obj.ny = reference.ny();
  obj.alphabet_x = reference.alphabet_x();
  obj.alphabet_y = reference.alphabet_y();
  obj.active.resize(reference.cells());
  for (std::size_t i = 0; i < reference.cells(); ++i) obj.active[i] = reference.probs()[i] > 0.0;
  obj.value = [ref, terms](std::span<const double> q) { return evaluate(*ref, q).combine(terms); };
  obj.gradient = [ref, terms](std::span<const double> q, std::span<double> g) {
    gradient_into(*ref, terms, q, g);
  };
  obj.convex = true;
  double worst_log = 0.0;
  for (double v : ref->log_p) {
    if (std::isfinite(v)) worst_log = std::max(worst_log, -v);
  }
  const double coeff = std::abs(terms.joint) + std::abs(terms.marginal_y) +
                       std::abs(terms.cond_entropy) + std::abs(terms.cond_div);
  obj.lipschitz = coeff * (2.0 * std::log2(1.0 / interior_margin) + worst_log + 2.0 * kInvLn2);
  obj.name = std::move(name);
  return obj;
}

OptReport minimize_over_joint(const SimplexObjective& obj, const SolverConfig& cfg,
                              std::span<const std::vector<double>> warm_starts) {
  Solver s(obj, cfg);
  const std::size_t d = s.dim();
  if (d > cfg.dimension_cap) throw DimensionCap(d, cfg.dimension_cap);
  if (d == 0) throw NonFiniteObjectiveEverywhere();

  TopK top(std::max<std::size_t>(cfg.starts, 1));
  std::size_t grid_points = 0;
  std::size_t n = 0;
  if (cfg.use_grid || warm_starts.empty()) {
    n = std::max<std::size_t>(cfg.grid_subdivisions, 1);
    while (n > 1 && binomial(n + d - 1, d - 1) > static_cast<double>(cfg.grid_point_budget)) --n;
    grid_points = s.grid(n, top);
  }

  Candidate best{kInf, {}};
  for (const auto& c : top.items()) {
    if (c.value < best.value) best = c;
  }
  std::vector<std::vector<double>> starts;
  for (const auto& w : warm_starts) {
    auto x = s.gather(w);
    const double v = s.value(x);
    if (v < best.value) best = {v, x};
    starts.push_back(s.interior(std::move(x), cfg.interior_margin));
  }
  for (const auto& c : top.items()) starts.push_back(s.interior(c.point, 1e-3));
  if (starts.empty() && !std::isfinite(best.value)) throw NonFiniteObjectiveEverywhere();

  OptMethod method = grid_points > 0 ? OptMethod::grid : OptMethod::mirror_descent;
  std::size_t iterations = 0, rejected = 0;
  for (auto& x0 : starts) {
    auto run = s.descend(std::move(x0));
    iterations += run.iterations;
    rejected += run.rejected;
    if (run.f < best.value || !std::isfinite(best.value)) {
      best = {run.f, std::move(run.x)};
      method = grid_points > 0 ? OptMethod::grid_refine : OptMethod::mirror_descent;
    }
  }
  if (!std::isfinite(best.value)) throw NonFiniteObjectiveEverywhere();

  double gap = s.fw_gap(best.point);
  if (!std::isfinite(gap)) {
    gap = obj.lipschitz * (n > 0 ? 1.0 / static_cast<double>(n) : cfg.step_tol);
  }
  return OptReport{.minimum = best.value,
                   .argmin = to_joint(obj, s.scatter_copy(best.point)),
                   .method = method,
                   .gap = gap,
                   .iterations = iterations,
                   .rejected_steps = rejected,
                   .grid_points = grid_points,
                   .grid_subdivisions = n,
                   .certified = obj.convex};
}

namespace {

struct Lagrangian {
  const JointPmf& ref;
  const RelEntropyTerms& f;
  const RelEntropyTerms& g;
  const SolverConfig& cfg;

  OptReport solve(double lambda, const std::vector<double>* warm, bool grid) const {
    SolverConfig c = cfg;
    c.use_grid = grid;
    const auto obj = make_objective(ref, f + g * lambda, {}, cfg.interior_margin);
    if (warm) {
      std::vector<std::vector<double>> w{*warm};
      return minimize_over_joint(obj, c, w);
    }
    return minimize_over_joint(obj, c);
  }

  std::vector<double> probs(const OptReport& r) const {
    return {r.argmin.probs().begin(), r.argmin.probs().end()};
  }
  TermValues terms(const OptReport& r) const { return term_values(ref, r.argmin.probs()); }
};

}  // namespace

OptReport minimize_clipped(const JointPmf& reference, const RelEntropyTerms& f,
                           const RelEntropyTerms& g, const SolverConfig& cfg) {
  const Lagrangian lag{reference, f, g, cfg};
  double upper = kInf;
  double lower = -kInf;
  std::optional<OptReport> incumbent;
  std::size_t iterations = 0, rejected = 0;

  // Every solve yields a feasible upper bound F(Q) and, by weak duality
  // F >= f + l g for l in [0, 1], a lower bound val - gap.
  auto consider = [&](const OptReport& r, double lambda) {
    iterations += r.iterations;
    rejected += r.rejected_steps;
    const auto tv = lag.terms(r);
    const double fv = tv.combine(f);
    const double gv = tv.combine(g);
    const double big_f = fv + pos_part(gv);
    lower = std::max(lower, r.minimum - r.gap);
    if (big_f < upper) {
      upper = big_f;
      incumbent = r;
      incumbent->minimum = big_f;
    }
    (void)lambda;
    return gv;
  };

  const OptReport r0 = lag.solve(0.0, nullptr, cfg.use_grid);
  const double g0 = consider(r0, 0.0);
  if (g0 > 0.0) {
    const OptReport r1 = lag.solve(1.0, nullptr, cfg.use_grid);
    const double g1 = consider(r1, 1.0);
    if (g1 < 0.0) {
      double lo = 0.0, hi = 1.0;
      auto warm = lag.probs(r1);
      for (std::size_t it = 0; it < cfg.multiplier_iterations; ++it) {
        if (upper - lower <= 1e-10 || hi - lo <= 1e-12) break;
        const double mid = 0.5 * (lo + hi);
        const OptReport r = lag.solve(mid, &warm, false);
        const double gm = consider(r, mid);
        warm = lag.probs(r);
        if (gm > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
  }
  OptReport out = std::move(*incumbent);
  out.gap = std::max(0.0, upper - lower);
  out.iterations = iterations;
  out.rejected_steps = rejected;
  out.certified = true;
  return out;
}

std::optional<OptReport> minimize_constrained(const JointPmf& reference,
                                              const RelEntropyTerms& f,
                                              const RelEntropyTerms& g,
                                              const SolverConfig& cfg) {
  const Lagrangian lag{reference, f, g, cfg};
  double upper = kInf;
  double lower = -kInf;
  std::optional<OptReport> incumbent;
  std::size_t iterations = 0, rejected = 0;

  // weak duality: f >= f + l g on the feasible set, l >= 0
  auto consider = [&](const OptReport& r) {
    iterations += r.iterations;
    rejected += r.rejected_steps;
    const auto tv = lag.terms(r);
    const double gv = tv.combine(g);
    lower = std::max(lower, r.minimum - r.gap);
    if (gv <= 0.0) {
      const double fv = tv.combine(f);
      if (fv < upper) {
        upper = fv;
        incumbent = r;
        incumbent->minimum = fv;
      }
    }
    return gv;
  };

  const OptReport r0 = lag.solve(0.0, nullptr, cfg.use_grid);
  if (consider(r0) > 0.0) {
    double lo = 0.0, hi = 1.0;
    auto warm = lag.probs(r0);
    while (true) {
      const OptReport r = lag.solve(hi, &warm, hi == 1.0 && cfg.use_grid);
      warm = lag.probs(r);
      if (consider(r) <= 0.0) break;
      lo = hi;
      hi *= 4.0;
      if (hi > 1e6) return std::nullopt;
    }
    for (std::size_t it = 0; it < cfg.multiplier_iterations; ++it) {
      if (upper - lower <= 1e-10 || hi - lo <= 1e-12 * hi) break;
      const double mid = 0.5 * (lo + hi);
      const OptReport r = lag.solve(mid, &warm, false);
      warm = lag.probs(r);
      if (consider(r) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  OptReport out = std::move(*incumbent);
  out.gap = std::max(0.0, upper - lower);
  out.iterations = iterations;
  out.rejected_steps = rejected;
  out.certified = true;
  return out;
}

OptReport minimize_on_superlevel(const JointPmf& reference, const RelEntropyTerms& f,
                                 const RelEntropyTerms& g, const SolverConfig& cfg) {
  OptReport clipped = minimize_clipped(reference, f, g, cfg);
  const auto tv = term_values(reference, clipped.argmin.probs());
  if (tv.combine(g) >= 0.0) return clipped;

  // The clipped minimizer lies in {g < 0}, so the restricted minimum sits on
  // the boundary g = 0. Search grid points of {g >= 0} and descend without
  // leaving the set.
  const Reference ref(reference);
  auto obj = make_objective(reference, f + g, "superlevel", cfg.interior_margin);
  obj.convex = false;
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < obj.active.size(); ++i) {
    if (obj.active[i]) cells.push_back(i);
  }
  auto full = [&](const std::vector<double>& x) {
    std::vector<double> q(reference.cells(), 0.0);
    for (std::size_t k = 0; k < cells.size(); ++k) q[cells[k]] = x[k];
    return q;
  };
  auto inside = [&](const std::vector<double>& x) {
    return evaluate(ref, full(x)).combine(g) >= 0.0;
  };
  SimplexObjective restricted = obj;
  restricted.value = [&, inner = obj.value](std::span<const double> q) {
    return evaluate(ref, q).combine(g) >= 0.0 ? inner(q) : kInf;
  };
  Solver s(restricted, cfg);
  if (s.dim() > cfg.dimension_cap) throw DimensionCap(s.dim(), cfg.dimension_cap);
  TopK top(std::max<std::size_t>(cfg.starts, 1));
  std::size_t n = std::max<std::size_t>(cfg.grid_subdivisions, 1);
  while (n > 1 && binomial(n + s.dim() - 1, s.dim() - 1) > double(cfg.grid_point_budget)) --n;
  const std::size_t points = s.grid(n, top);
  if (top.items().empty()) throw NonFiniteObjectiveEverywhere();

  Candidate best{kInf, {}};
  std::size_t iterations = 0, rejected = 0;
  for (const auto& c : top.items()) {
    if (c.value < best.value) best = c;
    auto x0 = s.interior(c.point, 1e-3);
    if (!inside(x0)) x0 = c.point;
    if (!std::isfinite(s.value(x0))) continue;
    auto run = s.descend(x0, inside);
    iterations += run.iterations;
    rejected += run.rejected;
    if (run.f < best.value) best = {run.f, std::move(run.x)};
  }
  return OptReport{.minimum = best.value,
                   .argmin = to_joint(obj, full(best.point)),
                   .method = OptMethod::grid_refine,
                   .gap = kInf,
                   .iterations = iterations,
                   .rejected_steps = rejected,
                   .grid_points = points,
                   .grid_subdivisions = n,
                   .certified = false};
}

RelEntropyTerms variational_h_terms(double alpha, double beta) {
  return {.joint = alpha,
          .marginal_y = alpha * (1.0 - beta) / beta,
          .cond_entropy = alpha - 1.0};
}

RelEntropyTerms variational_i_terms(double alpha, double beta) {
  return {.joint = alpha,
          .marginal_y = alpha * (1.0 - beta) / beta,
          .cond_div = 1.0 - alpha};
}

namespace {
void check_orders(double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidOrder("variational forms need finite positive alpha and beta");
  }
}
}  // namespace

OptReport variational_h(const JointPmf& joint, double alpha, double beta,
                        const SolverConfig& cfg) {
  check_orders(alpha, beta);
  return minimize_over_joint(
      make_objective(joint, variational_h_terms(alpha, beta), "variational_h", cfg.interior_margin),
      cfg);
}

OptReport variational_i(const JointPmf& joint, double alpha, double beta,
                        const SolverConfig& cfg) {
  check_orders(alpha, beta);
  return minimize_over_joint(
      make_objective(joint, variational_i_terms(alpha, beta), "variational_i", cfg.interior_margin),
      cfg);
}

}  // namespace renyikit
