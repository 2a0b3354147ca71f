#include "renyikit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "json.hpp"

#include "renyikit/classic.hpp"
#include "renyikit/exponents.hpp"
#include "renyikit/numerics.hpp"
#include "renyikit/parallel.hpp"
#include "renyikit/random.hpp"
#include "renyikit/two_param.hpp"

namespace renyikit {

using nlohmann::json;

const std::vector<PropertyInfo>& property_catalog() {
  static const std::vector<PropertyInfo> catalog = {
      {"collapse", "H~ and I~ reduce to the four classical variants at beta = alpha, 0, 1, inf"},
      {"mono-alpha", "H~ non-increasing and I~ non-decreasing in alpha"},
      {"mono-beta", "H~ non-increasing (alpha > 1) / non-decreasing (alpha < 1) in beta; I~ reversed"},
      {"additivity", "H~ and I~ additive on product joints"},
      {"dpi", "H~(X|YZ) <= H~(X|Y) and I~(X:Y) >= I~(X:Z) on Markov chains"},
      {"discard", "H~(XY|Z) >= H~(Y|Z)"},
      {"nonneg", "all entropies and informations non-negative; I~ = 0 on independent joints"},
      {"concavity", "I~ concave in P_X (alpha >= 1, beta <= 1), convex in P_{Y|X} (alpha, beta <= 1)"},
      {"alpha-concavity", "(alpha - 1) H~ and (1 - alpha) I~ concave in alpha"},
      {"continuity", "values at alpha = 1 +- 1e-3 within tolerance of the Shannon forms"},
      {"lemma-concave", "(a, b) -> a^x b^y jointly concave for x, y >= 0, x + y <= 1"},
      {"renyi-order", "D_alpha non-decreasing in alpha"},
      {"renyi-dpi", "D_alpha(Wp || Wq) <= D_alpha(p || q)"},
      {"renyi-variational", "grid optimum of (a/(1-a)) D(S||P) + D(S||Q) equals D_a"},
      {"variational", "minimum over Q_XY matches (alpha-1) H~ and (1-alpha) I~"},
      {"exponent-duality", "closed-form PA / SC exponents match their dual minimizations"},
  };
  return catalog;
}

bool VerifyReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

std::string VerifyReport::to_json() const {
  json props = json::array();
  for (const auto& r : results) {
    json p = {{"id", r.id},
              {"description", r.description},
              {"passed", r.passed},
              {"checks", r.checks},
              {"violations", r.violations},
              {"worst_excess", number(r.worst_excess)},
              {"seconds", r.seconds}};
    if (r.counterexample) p["counterexample"] = json::parse(*r.counterexample);
    props.push_back(std::move(p));
  }
  json doc = {{"seed", seed}, {"all_passed", all_passed()}, {"properties", std::move(props)}};
  return doc.dump(2);
}

namespace {

const std::vector<double> kFinite = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0};
const std::vector<double> kExtended = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0, kInf};

json joint_json(const JointPmf& j) { return json::parse(renyikit::to_json(j)); }

json vec_json(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json orders(double a, double b) { return {{"alpha", number(a)}, {"beta", number(b)}}; }

class Tally {
 public:
  Tally(PropertyResult& r, double slack) : r_(r), slack_(slack) { r_.worst_excess = -kInf; }

  // Records how far each check overshoots its allowance (slack, or tol for
  // equalities); positive overshoot is a violation.

  // lhs <= rhs + slack
  template <class F>
  void le(double lhs, double rhs, F&& describe) {
    double excess;
    if (std::isnan(lhs) || std::isnan(rhs)) {
      excess = kInf;
    } else if (lhs == rhs) {
      excess = 0.0;
    } else {
      excess = lhs - rhs;
    }
    record(excess - slack_, lhs, rhs, "<=", describe);
  }

  template <class F>
  void ge(double lhs, double rhs, F&& describe) {
    double excess;
    if (std::isnan(lhs) || std::isnan(rhs)) {
      excess = kInf;
    } else if (lhs == rhs) {
      excess = 0.0;
    } else {
      excess = rhs - lhs;
    }
    record(excess - slack_, lhs, rhs, ">=", describe);
  }

  template <class F>
  void eq(double lhs, double rhs, double tol, F&& describe) {
    double excess;
    if (std::isnan(lhs) || std::isnan(rhs)) {
      excess = kInf;
    } else if (lhs == rhs) {
      excess = 0.0;
    } else {
      excess = std::abs(lhs - rhs);
    }
    record(excess - tol, lhs, rhs, "==", describe);
  }

 private:
  template <class F>
  void record(double excess, double lhs, double rhs, const char* rel, F& describe) {
    ++r_.checks;
    if (excess > r_.worst_excess) r_.worst_excess = excess;
    if (!(excess > 0.0)) return;
    ++r_.violations;
    if (excess >= worst_violation_) {
      worst_violation_ = excess;
      json c = describe();
      c["lhs"] = number(lhs);
      c["rhs"] = number(rhs);
      c["relation"] = rel;
      c["overshoot"] = number(excess);
      r_.counterexample = c.dump();
    }
  }

  PropertyResult& r_;
  double slack_;
  double worst_violation_ = -kInf;
};

class Context {
 public:
  Context(const VerifyConfig& cfg, const std::string& id)
      : cfg_(cfg), rng_(derive_seed(cfg.seed, id_hash(id))) {}

  const VerifyConfig& cfg() const { return cfg_; }
  Rng& rng() { return rng_; }

  double H(const JointPmf& j, double a, double b) const {
    const OrderPair o{ExtOrder::from_value(a), ExtOrder::from_value(b)};
    return cfg_.hooks.h_tilde ? cfg_.hooks.h_tilde(j, o) : h_tilde(j, o).value;
  }
  double I(const JointPmf& j, double a, double b) const {
    const OrderPair o{ExtOrder::from_value(a), ExtOrder::from_value(b)};
    return cfg_.hooks.i_tilde ? cfg_.hooks.i_tilde(j, o) : i_tilde(j, o).value;
  }

  // Shapes in [2, max_dim]^2; every third joint has zeros unless full_support.
  JointPmf joint(std::size_t index, bool full_support = false, std::size_t max_dim = 0) {
    if (max_dim == 0) max_dim = cfg_.max_dim;
    max_dim = std::max<std::size_t>(max_dim, 2);
    const std::size_t nx = 2 + rng_.below(max_dim - 1);
    const std::size_t ny = 2 + rng_.below(max_dim - 1);
    const double zeros = (!full_support && index % 3 == 2) ? 0.3 : 0.0;
    return random_joint(rng_, nx, ny, zeros);
  }

 private:
  static std::uint64_t id_hash(const std::string& id) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : id) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }

  const VerifyConfig& cfg_;
  Rng rng_;
};

bool skip_corner(double a, double b) {
  return (a == 0.0 && b == 0.0) || (a == 1.0 && b == kInf);
}

void prop_collapse(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const JointPmf j = ctx.joint(s);
    for (double a : kExtended) {
      const auto ea = ExtOrder::from_value(a);
      auto cv = [&](CondEntropyVariant v) { return cond_entropy_variant(v, j, ea).value; };
      auto mv = [&](MutualInfoVariant v) { return mutual_info_variant(v, j, ea).value; };
      auto check = [&](double b, double got, double want, const char* what) {
        t.eq(got, want, ctx.cfg().slack, [&] {
          return json{{"joint", joint_json(j)}, {"order", orders(a, b)}, {"identity", what}};
        });
      };
      if (!skip_corner(a, a)) {
        check(a, ctx.H(j, a, a), cv(CondEntropyVariant::H), "H~(a,a) = H_a");
        check(a, ctx.I(j, a, a), mv(MutualInfoVariant::I), "I~(a,a) = I_a");
      }
      check(0.0, ctx.H(j, a, 0.0), cv(CondEntropyVariant::Hbar), "H~(a,0) = Hbar_a");
      check(1.0, ctx.H(j, a, 1.0), cv(CondEntropyVariant::Hstar), "H~(a,1) = H*_a");
      check(0.0, ctx.I(j, a, 0.0), mv(MutualInfoVariant::Ibar), "I~(a,0) = Ibar_a");
      check(1.0, ctx.I(j, a, 1.0), mv(MutualInfoVariant::Istar), "I~(a,1) = I*_a");
      if (!skip_corner(a, kInf)) {
        check(kInf, ctx.H(j, a, kInf), cv(CondEntropyVariant::HbarStar), "H~(a,inf) = Hbar*_a");
        check(kInf, ctx.I(j, a, kInf), mv(MutualInfoVariant::IbarStar), "I~(a,inf) = Ibar*_a");
      }
    }
  }
}

void prop_mono_alpha(Context& ctx, Tally& t) {
  std::vector<double> betas = {0.0};
  betas.insert(betas.end(), kFinite.begin(), kFinite.end());
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const JointPmf j = ctx.joint(s);
    for (double b : betas) {
      for (std::size_t k = 0; k + 1 < kFinite.size(); ++k) {
        const double a0 = kFinite[k], a1 = kFinite[k + 1];
        auto d = [&] { return json{{"joint", joint_json(j)}, {"beta", number(b)},
                                   {"alphas", {a0, a1}}}; };
        t.ge(ctx.H(j, a0, b), ctx.H(j, a1, b), d);
        t.le(ctx.I(j, a0, b), ctx.I(j, a1, b), d);
      }
    }
  }
}

void prop_mono_beta(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const JointPmf j = ctx.joint(s);
    for (double a : kExtended) {
      if (a == 1.0) continue;
      for (std::size_t k = 0; k + 1 < kFinite.size(); ++k) {
        const double b0 = kFinite[k], b1 = kFinite[k + 1];
        auto d = [&] { return json{{"joint", joint_json(j)}, {"alpha", number(a)},
                                   {"betas", {b0, b1}}}; };
        const double h0 = ctx.H(j, a, b0), h1 = ctx.H(j, a, b1);
        const double i0 = ctx.I(j, a, b0), i1 = ctx.I(j, a, b1);
        if (a > 1.0) {
          t.ge(h0, h1, d);
          t.le(i0, i1, d);
        } else {
          t.le(h0, h1, d);
          t.ge(i0, i1, d);
        }
      }
    }
  }
}

void prop_additivity(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const JointPmf p = ctx.joint(s, false, 3);
    const JointPmf q = ctx.joint(s + 1, false, 3);
    const JointPmf pq = product(p, q);
    for (double a : kFinite) {
      for (double b : kFinite) {
        auto d = [&] { return json{{"p", joint_json(p)}, {"q", joint_json(q)},
                                   {"order", orders(a, b)}}; };
        t.eq(ctx.H(pq, a, b), ctx.H(p, a, b) + ctx.H(q, a, b), ctx.cfg().slack, d);
        t.eq(ctx.I(pq, a, b), ctx.I(p, a, b) + ctx.I(q, a, b), ctx.cfg().slack, d);
      }
    }
  }
}

struct Triple {
  std::size_t nx, ny, nz;
  std::vector<double> p;  // index (x * ny + y) * nz + z

  double operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return p[(x * ny + y) * nz + z];
  }
};

Triple random_triple(Rng& rng, bool zeros) {
  Triple t{2 + rng.below(2), 2 + rng.below(2), 2 + rng.below(2), {}};
  t.p = random_simplex_point(rng, t.nx * t.ny * t.nz, zeros ? 0.3 : 0.0);
  return t;
}

bool same_side(double a, double b) { return (a <= 1.0 && b <= 1.0) || (a >= 1.0 && b >= 1.0); }

void prop_dpi(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const Triple tr = random_triple(ctx.rng(), s % 3 == 2);
    std::vector<double> x_yz(tr.nx * tr.ny * tr.nz), x_y(tr.nx * tr.ny, 0.0);
    for (std::size_t x = 0; x < tr.nx; ++x)
      for (std::size_t y = 0; y < tr.ny; ++y)
        for (std::size_t z = 0; z < tr.nz; ++z) {
          x_yz[x * tr.ny * tr.nz + y * tr.nz + z] = tr(x, y, z);
          x_y[x * tr.ny + y] += tr(x, y, z);
        }
    const auto j_yz = JointPmf::make(tr.nx, tr.ny * tr.nz, x_yz);
    const auto j_y = JointPmf::make(tr.nx, tr.ny, x_y);

    // Markov chain X - Y - Z through a random channel Y -> Z
    const JointPmf xy = ctx.joint(s, false, 4);
    const CondPmf w = random_channel(ctx.rng(), xy.ny(), 2 + ctx.rng().below(3),
                                     s % 3 == 2 ? 0.3 : 0.0);
    std::vector<double> xz(xy.nx() * w.n_out(), 0.0);
    for (std::size_t x = 0; x < xy.nx(); ++x)
      for (std::size_t y = 0; y < xy.ny(); ++y)
        for (std::size_t z = 0; z < w.n_out(); ++z) xz[x * w.n_out() + z] += xy(x, y) * w.row(y)[z];
    const auto j_xz = JointPmf::make(xy.nx(), w.n_out(), xz);

    for (double a : kFinite) {
      for (double b : kFinite) {
        if (!same_side(a, b)) continue;
        t.le(ctx.H(j_yz, a, b), ctx.H(j_y, a, b), [&] {
          return json{{"inequality", "H~(X|YZ) <= H~(X|Y)"}, {"joint_x_yz", joint_json(j_yz)},
                      {"order", orders(a, b)}};
        });
        t.ge(ctx.I(xy, a, b), ctx.I(j_xz, a, b), [&] {
          return json{{"inequality", "I~(X:Y) >= I~(X:Z)"}, {"joint_xy", joint_json(xy)},
                      {"joint_xz", joint_json(j_xz)}, {"order", orders(a, b)}};
        });
      }
    }
  }
}

void prop_discard(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const Triple tr = random_triple(ctx.rng(), s % 3 == 2);
    std::vector<double> xy_z(tr.p), y_z(tr.ny * tr.nz, 0.0);
    for (std::size_t x = 0; x < tr.nx; ++x)
      for (std::size_t y = 0; y < tr.ny; ++y)
        for (std::size_t z = 0; z < tr.nz; ++z) y_z[y * tr.nz + z] += tr(x, y, z);
    const auto j_xy = JointPmf::make(tr.nx * tr.ny, tr.nz, xy_z);
    const auto j_y = JointPmf::make(tr.ny, tr.nz, y_z);
    for (double a : kFinite) {
      for (double b : kFinite) {
        t.ge(ctx.H(j_xy, a, b), ctx.H(j_y, a, b), [&] {
          return json{{"joint_xy_z", joint_json(j_xy)}, {"order", orders(a, b)}};
        });
      }
    }
  }
}

void prop_nonneg(Context& ctx, Tally& t) {
  const double slack = ctx.cfg().slack;
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const JointPmf j = ctx.joint(s);
    const JointPmf ind = independent(marginal_x(j), marginal_y(j));
    for (double a : kExtended) {
      for (double b : kExtended) {
        if (skip_corner(a, b)) continue;
        auto d = [&] { return json{{"joint", joint_json(j)}, {"order", orders(a, b)}}; };
        t.ge(ctx.H(j, a, b), 0.0, d);
        t.ge(ctx.I(j, a, b), 0.0, d);
        t.eq(ctx.I(ind, a, b), 0.0, slack, [&] {
          return json{{"independent_joint", joint_json(ind)}, {"order", orders(a, b)}};
        });
      }
      const auto ea = ExtOrder::from_value(a);
      for (auto v : {CondEntropyVariant::H, CondEntropyVariant::Hstar, CondEntropyVariant::Hbar,
                     CondEntropyVariant::HbarStar}) {
        t.ge(cond_entropy_variant(v, j, ea).value, 0.0, [&] {
          return json{{"joint", joint_json(j)}, {"alpha", number(a)}, {"measure", to_string(v)}};
        });
      }
      for (auto v : {MutualInfoVariant::I, MutualInfoVariant::Istar, MutualInfoVariant::Ibar,
                     MutualInfoVariant::IbarStar}) {
        t.ge(mutual_info_variant(v, j, ea).value, 0.0, [&] {
          return json{{"joint", joint_json(j)}, {"alpha", number(a)}, {"measure", to_string(v)}};
        });
        t.eq(mutual_info_variant(v, ind, ea).value, 0.0, slack, [&] {
          return json{{"independent_joint", joint_json(ind)}, {"alpha", number(a)},
                      {"measure", to_string(v)}};
        });
      }
    }
  }
}

std::vector<double> mix(std::span<const double> p, std::span<const double> q, double lam) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = lam * p[i] + (1.0 - lam) * q[i];
  return out;
}

void prop_concavity(Context& ctx, Tally& t) {
  Rng& rng = ctx.rng();
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const std::size_t nx = 2 + rng.below(ctx.cfg().max_dim - 1);
    const std::size_t ny = 2 + rng.below(ctx.cfg().max_dim - 1);
    const double zeros = s % 3 == 2 ? 0.3 : 0.0;
    const CondPmf w = random_channel(rng, nx, ny, zeros);
    const auto p0 = random_simplex_point(rng, nx, zeros);
    const auto p1 = random_simplex_point(rng, nx, zeros);
    const auto pm = mix(p0, p1, 0.5);
    const auto j0 = joint_from_channel(Pmf::make(p0), w);
    const auto j1 = joint_from_channel(Pmf::make(p1), w);
    const auto jm = joint_from_channel(Pmf::make(pm), w);

    const CondPmf w0 = random_channel(rng, nx, ny, zeros);
    const CondPmf w1 = random_channel(rng, nx, ny, zeros);
    std::vector<std::vector<double>> rows(nx);
    for (std::size_t x = 0; x < nx; ++x) rows[x] = mix(w0.row(x), w1.row(x), 0.5);
    const CondPmf wm = CondPmf::make(rows);
    const Pmf px = Pmf::make(p0);
    const auto k0 = joint_from_channel(px, w0);
    const auto k1 = joint_from_channel(px, w1);
    const auto km = joint_from_channel(px, wm);

    for (double a : kFinite) {
      for (double b : kFinite) {
        if (a >= 1.0 && b <= 1.0) {
          t.ge(ctx.I(jm, a, b), 0.5 * (ctx.I(j0, a, b) + ctx.I(j1, a, b)), [&] {
            return json{{"shape", "concave in P_X"}, {"p0", joint_json(j0)},
                        {"p1", joint_json(j1)}, {"order", orders(a, b)}};
          });
        }
        if (a <= 1.0 && b <= 1.0) {
          t.le(ctx.I(km, a, b), 0.5 * (ctx.I(k0, a, b) + ctx.I(k1, a, b)), [&] {
            return json{{"shape", "convex in P_{Y|X}"}, {"p0", joint_json(k0)},
                        {"p1", joint_json(k1)}, {"order", orders(a, b)}};
          });
        }
      }
    }
  }
}

void prop_alpha_concavity(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const JointPmf j = ctx.joint(s);
    for (double b : kFinite) {
      auto fh = [&](double a) { return (a - 1.0) * ctx.H(j, a, b); };
      auto fi = [&](double a) { return (1.0 - a) * ctx.I(j, a, b); };
      for (std::size_t u = 0; u < kFinite.size(); ++u) {
        for (std::size_t v = u + 2; v < kFinite.size(); ++v) {
          const double a0 = kFinite[u], a1 = kFinite[v], am = 0.5 * (a0 + a1);
          auto d = [&] { return json{{"joint", joint_json(j)}, {"beta", b},
                                     {"alphas", {a0, am, a1}}}; };
          t.ge(fh(am), 0.5 * (fh(a0) + fh(a1)), d);
          t.ge(fi(am), 0.5 * (fi(a0) + fi(a1)), d);
        }
      }
    }
  }
}

void prop_continuity(Context& ctx, Tally& t) {
  const double tol = ctx.cfg().continuity_tol;
  std::vector<double> betas = {0.0};
  betas.insert(betas.end(), kFinite.begin(), kFinite.end());
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const JointPmf j = ctx.joint(s, true);
    const double h = shannon_cond_entropy(j);
    const double i = shannon_mutual_info(j);
    for (double a : {1.0 - 1e-3, 1.0 + 1e-3}) {
      for (double b : betas) {
        auto d = [&] { return json{{"joint", joint_json(j)}, {"order", orders(a, b)}}; };
        t.eq(ctx.H(j, a, b), h, tol, d);
        t.eq(ctx.I(j, a, b), i, tol, d);
      }
    }
    const std::size_t k = 2 + ctx.rng().below(ctx.cfg().max_dim - 1);
    const auto p = random_simplex_point(ctx.rng(), k);
    const auto q = random_simplex_point(ctx.rng(), k);
    const double dk = relative_entropy(p, q);
    for (double a : {1.0 - 1e-3, 1.0 + 1e-3}) {
      t.eq(renyi_divergence_raw(p, q, ExtOrder::from_value(a)).value, dk, tol, [&] {
        return json{{"p", vec_json(p)}, {"q", vec_json(q)}, {"alpha", a}};
      });
    }
  }
}

void prop_lemma_concave(Context& ctx, Tally& t) {
  Rng& rng = ctx.rng();
  for (std::size_t s = 0; s < 50 * ctx.cfg().samples; ++s) {
    double x = rng.uniform01(), y = rng.uniform01();
    if (x + y > 1.0) {
      x = 1.0 - x;
      y = 1.0 - y;
    }
    const double a0 = 10.0 * rng.uniform01() + 1e-3, b0 = 10.0 * rng.uniform01() + 1e-3;
    const double a1 = 10.0 * rng.uniform01() + 1e-3, b1 = 10.0 * rng.uniform01() + 1e-3;
    auto f = [&](double a, double b) { return std::pow(a, x) * std::pow(b, y); };
    const double mid = f(0.5 * (a0 + a1), 0.5 * (b0 + b1));
    const double chord = 0.5 * (f(a0, b0) + f(a1, b1));
    t.ge(mid, chord - 1e-12 * std::max(1.0, chord), [&] {
      return json{{"exponents", {x, y}}, {"points", {{a0, b0}, {a1, b1}}}};
    });
  }
}

const std::vector<double> kDivergenceGrid = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0,
                                             1.1, 1.5, 2.0, 3.0, 5.0, 10.0, kInf};

void prop_renyi_order(Context& ctx, Tally& t) {
  Rng& rng = ctx.rng();
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const std::size_t k = 2 + rng.below(ctx.cfg().max_dim - 1);
    const auto p = random_simplex_point(rng, k, s % 2 ? 0.3 : 0.0);
    const auto q = random_simplex_point(rng, k, s % 3 ? 0.0 : 0.3);
    for (std::size_t u = 0; u + 1 < kDivergenceGrid.size(); ++u) {
      const double a0 = kDivergenceGrid[u], a1 = kDivergenceGrid[u + 1];
      t.le(renyi_divergence_raw(p, q, ExtOrder::from_value(a0)).value,
           renyi_divergence_raw(p, q, ExtOrder::from_value(a1)).value, [&] {
             return json{{"p", vec_json(p)}, {"q", vec_json(q)},
                         {"alphas", {number(a0), number(a1)}}};
           });
    }
  }
}

void prop_renyi_dpi(Context& ctx, Tally& t) {
  Rng& rng = ctx.rng();
  for (std::size_t s = 0; s < ctx.cfg().samples; ++s) {
    const std::size_t k = 2 + rng.below(ctx.cfg().max_dim - 1);
    const auto p = random_simplex_point(rng, k, s % 2 ? 0.3 : 0.0);
    const auto q = random_simplex_point(rng, k, s % 3 ? 0.0 : 0.3);
    const std::size_t m = 2 + rng.below(3);
    const CondPmf w = random_channel(rng, k, m, 0.2);
    std::vector<double> wp(m, 0.0), wq(m, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t y = 0; y < m; ++y) {
        wp[y] += p[i] * w.row(i)[y];
        wq[y] += q[i] * w.row(i)[y];
      }
    }
    for (double a : kDivergenceGrid) {
      const auto ea = ExtOrder::from_value(a);
      t.le(renyi_divergence_raw(wp, wq, ea).value, renyi_divergence_raw(p, q, ea).value, [&] {
        return json{{"p", vec_json(p)}, {"q", vec_json(q)}, {"alpha", number(a)}};
      });
    }
  }
}

// Grid optimum over the simplex of dimension k (k = 2 or 3) with n steps;
// returns the optimum and the largest change to a neighbouring grid point.
std::pair<double, double> grid_optimum(std::size_t k, std::size_t n, double sign,
                                       const std::function<double(std::span<const double>)>& f) {
  auto at = [&](std::size_t i, std::size_t j) {
    const double dn = static_cast<double>(n);
    std::vector<double> s = k == 2 ? std::vector<double>{i / dn, 1.0 - i / dn}
                                   : std::vector<double>{i / dn, j / dn, 1.0 - (i + j) / dn};
    return sign * f(s);
  };
  double best = kInf;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = (k == 2 ? 0 : 1); j <= (k == 2 ? 0 : n - 1 - i); ++j) {
      const double v = at(i, j);
      if (v < best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  double res = 0.0;
  const long moves2[][2] = {{1, 0}, {-1, 0}};
  const long moves3[][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
  const auto* moves = k == 2 ? moves2 : moves3;
  const std::size_t nm = k == 2 ? 2 : 6;
  for (std::size_t m = 0; m < nm; ++m) {
    const long i = static_cast<long>(bi) + moves[m][0], j = static_cast<long>(bj) + moves[m][1];
    if (i < 0 || j < 0 || i + j > static_cast<long>(n)) continue;
    const double v = at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    if (std::isfinite(v)) res = std::max(res, std::abs(v - best));
  }
  return {sign * best, res};
}

void prop_renyi_variational(Context& ctx, Tally& t) {
  Rng& rng = ctx.rng();
  const std::size_t count = std::max<std::size_t>(1, ctx.cfg().samples / 10);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t k = 2 + s % 2;
    const std::size_t n = k == 2 ? 20000 : 400;
    std::vector<double> p, q;
    do {
      p = random_simplex_point(rng, k);
      q = random_simplex_point(rng, k);
    } while (*std::min_element(p.begin(), p.end()) < 0.05 ||
             *std::min_element(q.begin(), q.end()) < 0.05);
    for (double a : {0.3, 0.7, 1.5, 3.0}) {
      const double sign = a < 1.0 ? 1.0 : -1.0;
      const auto [opt, res] = grid_optimum(k, n, sign, [&](std::span<const double> sv) {
        return a / (1.0 - a) * relative_entropy(sv, p) + relative_entropy(sv, q);
      });
      const double d = renyi_divergence_raw(p, q, ExtOrder::from_value(a)).value;
      t.eq(opt, d, 2.0 * res + 1e-12, [&] {
        return json{{"p", vec_json(p)}, {"q", vec_json(q)}, {"alpha", a},
                    {"resolution", res}};
      });
    }
  }
}

void prop_variational(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().solver_samples; ++s) {
    const JointPmf j = ctx.joint(s, false, 3);
    for (double a : {0.5, 1.5, 2.0}) {
      for (double b : {0.5, 1.0, 2.0}) {
        const auto rh = variational_h(j, a, b, ctx.cfg().solver);
        const auto ri = variational_i(j, a, b, ctx.cfg().solver);
        const double sh = 1.0 / std::abs(a - 1.0);
        t.eq(rh.minimum / (a - 1.0), ctx.H(j, a, b),
             std::max(ctx.cfg().variational_tol, rh.gap * sh), [&] {
               return json{{"measure", "H~"}, {"joint", joint_json(j)}, {"order", orders(a, b)},
                           {"gap", rh.gap}, {"argmin", joint_json(rh.argmin)}};
             });
        t.eq(ri.minimum / (1.0 - a), ctx.I(j, a, b),
             std::max(ctx.cfg().variational_tol, ri.gap * sh), [&] {
               return json{{"measure", "I~"}, {"joint", joint_json(j)}, {"order", orders(a, b)},
                           {"gap", ri.gap}, {"argmin", joint_json(ri.argmin)}};
             });
      }
    }
  }
}

void prop_exponent_duality(Context& ctx, Tally& t) {
  for (std::size_t s = 0; s < ctx.cfg().exponent_samples; ++s) {
    const JointPmf j = ctx.joint(s, false, 3);
    const double h = shannon_cond_entropy(j);
    const double i = shannon_mutual_info(j);
    const double logx = std::log2(static_cast<double>(j.nx()));
    const std::vector<double> pa_rates = {0.0, 0.25, std::max(0.0, h - 0.3), h + 0.3, logx};
    const std::vector<double> sc_rates = {0.0, 0.5 * i, std::max(0.0, i - 0.1), i + 0.1, logx};
    for (double b : {0.3, 0.5, 0.8}) {
      for (std::size_t r = 0; r < pa_rates.size(); ++r) {
        const double primal = pa_exponent(j, b, Rate(pa_rates[r])).value;
        const auto dual = pa_dual_exponent(j, b, Rate(pa_rates[r]), ctx.cfg().solver);
        t.eq(primal, dual.value, ctx.cfg().duality_tol, [&] {
          return json{{"exponent", "pa"}, {"joint", joint_json(j)}, {"beta", b},
                      {"rate", pa_rates[r]}, {"gap", dual.clipped.gap}};
        });
        const double sp = sc_exponent(j, b, Rate(sc_rates[r])).value;
        const auto sd = sc_dual_exponent(j, b, Rate(sc_rates[r]), ctx.cfg().solver);
        t.eq(sp, sd.minimum, ctx.cfg().duality_tol, [&] {
          return json{{"exponent", "sc"}, {"joint", joint_json(j)}, {"beta", b},
                      {"rate", sc_rates[r]}, {"gap", sd.gap}};
        });
      }
    }
  }
}

using PropFn = void (*)(Context&, Tally&);

const std::map<std::string, PropFn>& property_functions() {
  static const std::map<std::string, PropFn> fns = {
      {"collapse", prop_collapse},
      {"mono-alpha", prop_mono_alpha},
      {"mono-beta", prop_mono_beta},
      {"additivity", prop_additivity},
      {"dpi", prop_dpi},
      {"discard", prop_discard},
      {"nonneg", prop_nonneg},
      {"concavity", prop_concavity},
      {"alpha-concavity", prop_alpha_concavity},
      {"continuity", prop_continuity},
      {"lemma-concave", prop_lemma_concave},
      {"renyi-order", prop_renyi_order},
      {"renyi-dpi", prop_renyi_dpi},
      {"renyi-variational", prop_renyi_variational},
      {"variational", prop_variational},
      {"exponent-duality", prop_exponent_duality},
  };
  return fns;
}

}  // namespace

VerifyReport run_verification(const VerifyConfig& cfg) {
  std::vector<PropertyInfo> selected;
  for (const auto& id : cfg.props) {
    const auto& cat = property_catalog();
    const auto it = std::find_if(cat.begin(), cat.end(),
                                 [&](const PropertyInfo& p) { return p.id == id; });
    if (it == cat.end()) throw InvalidParameter("unknown property '" + id + "'");
  }
  for (const auto& p : property_catalog()) {
    if (cfg.props.empty() ||
        std::find(cfg.props.begin(), cfg.props.end(), p.id) != cfg.props.end()) {
      selected.push_back(p);
    }
  }
  VerifyReport report;
  report.seed = cfg.seed;
  report.results = parallel_map(selected.size(), cfg.threads, [&](std::size_t k) {
    const auto& info = selected[k];
    PropertyResult r;
    r.id = info.id;
    r.description = info.description;
    const bool divergence = info.id.rfind("renyi-", 0) == 0 && info.id != "renyi-variational";
    const auto t0 = std::chrono::steady_clock::now();
    Context ctx(cfg, info.id);
    Tally tally(r, divergence ? cfg.divergence_slack : cfg.slack);
    property_functions().at(info.id)(ctx, tally);
    r.passed = r.violations == 0;
    if (r.checks == 0) r.worst_excess = 0.0;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  });
  return report;
}

}  // namespace renyikit
