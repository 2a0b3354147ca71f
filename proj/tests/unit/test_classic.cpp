#include <cmath>
#include <algorithm>
#include <functional>

#include "doctest.h"
#include "renyikit/classic.hpp"
#include "renyikit/numerics.hpp"
#include "renyikit/two_param.hpp"
#include "test_util.hpp"

using namespace renyikit;

namespace {

const std::vector<double> kAlphaGrid = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0,
                                        1.1, 1.5, 2.0, 3.0, 5.0, 10.0, kInf};

ExtOrder ord(double a) { return ExtOrder::from_value(a); }

// Direct power-sum evaluation, no log domain.
double naive_divergence(const std::vector<double>& p, const std::vector<double>& q,
                        double a) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) s += std::pow(p[i], a) * std::pow(q[i], 1 - a);
  }
  return std::log2(s) / (a - 1);
}

// Golden-section minimum of a unimodal function on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200; ++i) {
    if (fc < fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = f(d);
    }
  }
  return std::min(fc, fd);
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("renyi_divergence examples") {
  const auto p = Pmf::make({0.5, 0.5});
  for (double a : kAlphaGrid) {
    CHECK(std::abs(renyi_divergence(p, p, ord(a)).value) <= 1e-15);
  }
  const auto q = Pmf::make({0.75, 0.25});
  // 0.25/0.75 + 0.25/0.25
  CHECK(renyi_divergence(p, q, ord(2)).value ==
        doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-14));
  const auto z = Pmf::make({1.0, 0.0});
  CHECK(renyi_divergence(p, z, ord(2)).value == kInf);
  CHECK(renyi_divergence(p, z, ord(1)).value == kInf);
  CHECK(renyi_divergence(p, z, ord(kInf)).value == kInf);
  // alpha < 1 stays finite; the mismatched atom contributes nothing
  CHECK(renyi_divergence(p, z, ord(0.5)).value ==
        doctest::Approx(-2 * std::log2(std::sqrt(0.5))).epsilon(1e-14));
  CHECK(std::abs(renyi_divergence(p, z, ord(0)).value) <= 1e-15);
  CHECK(renyi_divergence(z, p, ord(0)).value == doctest::Approx(1.0));
  // disjoint supports
  CHECK(renyi_divergence(Pmf::make({0.0, 1.0}), z, ord(0.5)).value == kInf);
  CHECK(renyi_divergence(Pmf::make({0.0, 1.0}), z, ord(0)).value == kInf);
  CHECK_THROWS_AS(renyi_divergence(p, Pmf::make({"a", "b"}, {0.5, 0.5}), ord(2)),
                  AlphabetMismatch);
  CHECK(renyi_divergence(p, q, ord(2)).branch == Branch::generic);
  CHECK(renyi_divergence(p, q, ord(0)).branch == Branch::alpha_zero);
  CHECK(renyi_divergence(p, q, ord(kInf)).branch == Branch::alpha_inf);
  CHECK(renyi_divergence(p, q, ord(1)).branch == Branch::alpha_one);
}

TEST_CASE("renyi_divergence matches naive evaluation and limits") {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    auto p = random_simplex_point(rng, 4);
    auto q = random_simplex_point(rng, 4);
    for (double a : {0.3, 0.7, 1.5, 4.0}) {
      CHECK(renyi_divergence_raw(p, q, ord(a)).value ==
            doctest::Approx(naive_divergence(p, q, a)).epsilon(1e-12));
    }
    double kl = 0, mx = -kInf;
    for (int i = 0; i < 4; ++i) {
      kl += p[i] * std::log2(p[i] / q[i]);
      mx = std::max(mx, std::log2(p[i] / q[i]));
    }
    CHECK(renyi_divergence_raw(p, q, ord(1)).value == doctest::Approx(kl).epsilon(1e-12));
    CHECK(renyi_divergence_raw(p, q, ord(kInf)).value == doctest::Approx(mx).epsilon(1e-12));
    CHECK(std::abs(renyi_divergence_raw(p, q, ord(1e-7)).value -
                   renyi_divergence_raw(p, q, ord(0)).value) < 1e-5);
  }
}

TEST_CASE("cond_renyi_divergence") {
  const auto w = CondPmf::make({{0.9, 0.1}, {0.1, 0.9}});
  const auto v = CondPmf::make({{0.8, 0.2}, {0.2, 0.8}});
  const auto px = Pmf::uniform(2);
  CHECK(std::abs(cond_renyi_divergence(w, w, px, ord(2)).value) <= 1e-15);
  const auto point = Pmf::point_mass(2, 0);
  CHECK(cond_renyi_divergence(w, v, point, ord(2)).value ==
        doctest::Approx(renyi_divergence_raw(to_vec(w.row(0)), to_vec(v.row(0)), ord(2)).value)
            .epsilon(1e-14));
  // direct construction: both rows give the same sum
  const double s = 0.81 / 0.8 + 0.01 / 0.2;
  CHECK(cond_renyi_divergence(w, v, px, ord(2)).value ==
        doctest::Approx(std::log2(s)).epsilon(1e-14));
  const auto jw = joint_from_channel(px, w);
  const auto jv = joint_from_channel(px, v);
  CHECK(cond_renyi_divergence(w, v, px, ord(2)).value ==
        doctest::Approx(renyi_divergence_raw(jw.probs(), jv.probs(), ord(2)).value).epsilon(1e-14));
}

TEST_CASE("renyi_entropy examples") {
  for (std::size_t k : {2u, 3u, 7u}) {
    for (double a : kAlphaGrid) {
      CHECK(renyi_entropy(Pmf::uniform(k), ord(a)).value ==
            doctest::Approx(std::log2(double(k))).epsilon(1e-14));
      CHECK(std::abs(renyi_entropy(Pmf::point_mass(k, 1), ord(a)).value) <= 1e-15);
    }
  }
  const auto b = Pmf::make({0.11, 0.89});
  CHECK(renyi_entropy(b, ord(2)).value ==
        doctest::Approx(-std::log2(0.11 * 0.11 + 0.89 * 0.89)).epsilon(1e-14));
  CHECK(renyi_entropy(b, ord(1)).value ==
        doctest::Approx(-(0.11 * std::log2(0.11) + 0.89 * std::log2(0.89))).epsilon(1e-14));
}

TEST_CASE("conditional entropy variants: trivial cases") {
  const auto indep = independent(Pmf::uniform(3), Pmf::make({0.2, 0.3, 0.5}));
  const auto same = testutil::diag_uniform(3);
  for (auto var : {CondEntropyVariant::H, CondEntropyVariant::Hstar, CondEntropyVariant::Hbar,
                   CondEntropyVariant::HbarStar}) {
    for (double a : kAlphaGrid) {
      CHECK(cond_entropy_variant(var, indep, ord(a)).value ==
            doctest::Approx(std::log2(3.0)).epsilon(1e-13));
      CHECK(std::abs(cond_entropy_variant(var, same, ord(a)).value) <= 1e-14);
    }
  }
}

TEST_CASE("Arimoto entropy equals its minimization over Q_Y and H~_{a,1}") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto j = random_joint(rng, 3, 2);
    for (double a : {0.5, 2.0, 3.0}) {
      const double closed = cond_entropy_variant(CondEntropyVariant::Hstar, j, ord(a)).value;
      auto f = [&](double q0) {
        std::vector<double> ref(6);
        for (std::size_t x = 0; x < 3; ++x) {
          ref[x * 2] = q0;
          ref[x * 2 + 1] = 1 - q0;
        }
        return naive_divergence(to_vec(j.probs()), ref, a);
      };
      CHECK(closed == doctest::Approx(-golden_min(f, 1e-12, 1 - 1e-12)).epsilon(1e-8));
      CHECK(closed == doctest::Approx(h_tilde(j, a, 1.0).value).epsilon(1e-12));
    }
  }
  const auto g = JointPmf::make({{0.1, 0.2}, {0.3, 0.4}});
  CHECK(cond_entropy_variant(CondEntropyVariant::Hstar, g, ord(2)).value ==
        doctest::Approx(h_tilde(g, 2.0, 1.0).value).epsilon(1e-14));
}

TEST_CASE("mutual information variants") {
  const auto indep = independent(Pmf::make({0.3, 0.7}), Pmf::make({0.2, 0.3, 0.5}));
  for (auto var : {MutualInfoVariant::I, MutualInfoVariant::Istar, MutualInfoVariant::Ibar,
                   MutualInfoVariant::IbarStar}) {
    for (double a : kAlphaGrid) {
      CHECK(std::abs(mutual_info_variant(var, indep, ord(a)).value) <= 1e-14);
    }
  }
  const auto same = testutil::diag_uniform(2);
  // (1/(2-1)) log2 (2 * 0.5^2 / 0.25^1)
  CHECK(mutual_info_variant(MutualInfoVariant::I, same, ord(2)).value ==
        doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto j = random_joint(rng, 3, 2);
    const auto px = marginal_x(j);
    for (double a : {0.5, 2.0}) {
      const double closed = mutual_info_variant(MutualInfoVariant::Istar, j, ord(a)).value;
      auto f = [&](double q0) {
        std::vector<double> ref(6);
        for (std::size_t x = 0; x < 3; ++x) {
          ref[x * 2] = px[x] * q0;
          ref[x * 2 + 1] = px[x] * (1 - q0);
        }
        return naive_divergence(to_vec(j.probs()), ref, a);
      };
      CHECK(closed == doctest::Approx(golden_min(f, 1e-12, 1 - 1e-12)).epsilon(1e-8));
    }
    CHECK(mutual_info_variant(MutualInfoVariant::Istar, j, ord(0.5)).value ==
          doctest::Approx(i_tilde(j, 0.5, 1.0).value).epsilon(1e-12));
  }
  const auto g = JointPmf::make({{0.1, 0.2}, {0.3, 0.4}});
  CHECK(mutual_info_variant(MutualInfoVariant::Istar, g, ord(0.5)).value ==
        doctest::Approx(i_tilde(g, 0.5, 1.0).value).epsilon(1e-13));
}

TEST_CASE("Shannon reductions at alpha = 1") {
  for (const auto& j : testutil::random_joints(8, 30)) {
    const double h = shannon_cond_entropy(j);
    const double i = shannon_mutual_info(j);
    for (auto var : {CondEntropyVariant::H, CondEntropyVariant::Hstar, CondEntropyVariant::Hbar,
                     CondEntropyVariant::HbarStar}) {
      CHECK(cond_entropy_variant(var, j, ExtOrder::one()).value == doctest::Approx(h).epsilon(1e-12));
    }
    for (auto var : {MutualInfoVariant::I, MutualInfoVariant::Istar, MutualInfoVariant::Ibar,
                     MutualInfoVariant::IbarStar}) {
      CHECK(mutual_info_variant(var, j, ExtOrder::one()).value == doctest::Approx(i).epsilon(1e-12));
    }
  }
}

TEST_CASE("divergence properties: order monotonicity, DPI, non-negativity") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 2 + rng.below(4);
    auto p = random_simplex_point(rng, k, t % 2 ? 0.3 : 0.0);
    auto q = random_simplex_point(rng, k, t % 3 ? 0.0 : 0.3);
    double prev = -kInf;
    for (double a : kAlphaGrid) {
      const double d = renyi_divergence_raw(p, q, ord(a)).value;
      CHECK(d >= -1e-12);
      CHECK(prev <= d + 1e-10);
      prev = d;
    }
    const std::size_t m = 2 + rng.below(3);
    const auto w = random_channel(rng, k, m, 0.2);
    std::vector<double> wp(m, 0.0), wq(m, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t y = 0; y < m; ++y) {
        wp[y] += p[i] * w.row(i)[y];
        wq[y] += q[i] * w.row(i)[y];
      }
    }
    for (double a : kAlphaGrid) {
      CHECK(renyi_divergence_raw(wp, wq, ord(a)).value <=
            renyi_divergence_raw(p, q, ord(a)).value + 1e-10);
    }
  }
}

TEST_CASE("variational expression of D_alpha") {
  Rng rng(10);
  const int n = 20000;
  for (int t = 0; t < 20; ++t) {
    const double p0 = 0.2 + 0.6 * rng.uniform01();
    const double q0 = 0.2 + 0.6 * rng.uniform01();
    const std::vector<double> p = {p0, 1 - p0}, q = {q0, 1 - q0};
    for (double a : {0.3, 0.7, 1.5, 3.0}) {
      const double sign = a < 1 ? 1.0 : -1.0;
      std::vector<double> vals(n + 1);
      for (int i = 0; i <= n; ++i) {
        const std::vector<double> s = {double(i) / n, 1 - double(i) / n};
        vals[i] = sign * (a / (1 - a) * relative_entropy(s, p) + relative_entropy(s, q));
      }
      const auto it = std::min_element(vals.begin() + 1, vals.end() - 1);
      const auto b = it - vals.begin();
      // resolution bound: variation to the neighbouring grid points
      const double res = std::max(std::abs(vals[b + 1] - vals[b]), std::abs(vals[b - 1] - vals[b]));
      CHECK(std::abs(sign * *it - renyi_divergence_raw(p, q, ord(a)).value) <= 2 * res + 1e-12);
    }
  }
}

TEST_CASE("continuity of the divergence at alpha = 1") {
  // D_a = D + (a - 1) (ln 2 / 2) Var_p[log2(p/q)] + O((a - 1)^2)
  Rng rng(12);
  const double delta = 1e-3;
  for (int t = 0; t < 50; ++t) {
    auto p = random_simplex_point(rng, 3);
    auto q = random_simplex_point(rng, 3);
    const double d = renyi_divergence_raw(p, q, ExtOrder::one()).value;
    double var = 0;
    for (int i = 0; i < 3; ++i) {
      const double l = std::log2(p[i] / q[i]);
      var += p[i] * (l - d) * (l - d);
    }
    const double slope = std::log(2.0) / 2 * var;
    for (double s : {-1.0, 1.0}) {
      const double got = renyi_divergence_raw(p, q, ord(1 + s * delta)).value - d;
      CHECK(std::abs(got - s * delta * slope) <= delta * delta * (1 + 10 * slope * slope));
    }
  }
  // mild ratios: the deviation stays below 1e-4
  for (int t = 0; t < 50; ++t) {
    const double p0 = 0.4 + 0.2 * rng.uniform01();
    const double q0 = 0.4 + 0.2 * rng.uniform01();
    const std::vector<double> p = {p0, 1 - p0}, q = {q0, 1 - q0};
    const double d = renyi_divergence_raw(p, q, ExtOrder::one()).value;
    for (double a : {1 - delta, 1 + delta}) {
      CHECK(std::abs(renyi_divergence_raw(p, q, ord(a)).value - d) <= 1e-4);
    }
  }
}
