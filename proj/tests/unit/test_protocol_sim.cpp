#include <cmath>
#include <sstream>

#include "doctest.h"
#include "renyikit/classic.hpp"
#include "renyikit/csv.hpp"
#include "renyikit/exponents.hpp"
#include "renyikit/random.hpp"
#include "renyikit/protocol_sim.hpp"
#include "renyikit/two_param.hpp"
#include "test_util.hpp"

using namespace renyikit;

namespace {

// Direct D_beta between the hashed joint and uniform x P_Y.
double hashed_divergence(const JointPmf& j, const std::vector<std::size_t>& table,
                         std::size_t M, double beta) {
  const auto py = marginal_y(j);
  std::vector<double> r(M * j.ny(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y) r[table[x] * j.ny() + y] += j(x, y);
  double s = 0;
  for (std::size_t z = 0; z < M; ++z)
    for (std::size_t y = 0; y < j.ny(); ++y)
      if (r[z * j.ny() + y] > 0)
        s += std::pow(r[z * j.ny() + y], beta) * std::pow(py[y] / double(M), 1 - beta);
  return beta == 1 ? NAN : std::log2(s) / (beta - 1);
}

// Exact ensemble value with M = 2 codewords by explicit double sum.
double sc_two_codewords(const std::vector<double>& px, const std::vector<std::vector<double>>& w,
                        double beta) {
  const std::size_t ny = w[0].size();
  std::vector<double> py(ny, 0.0);
  for (std::size_t x = 0; x < px.size(); ++x)
    for (std::size_t y = 0; y < ny; ++y) py[y] += px[x] * w[x][y];
  double e = 0;
  for (std::size_t a = 0; a < px.size(); ++a)
    for (std::size_t b = 0; b < px.size(); ++b) {
      double s = 0;
      for (std::size_t y = 0; y < ny; ++y) {
        const double p = 0.5 * (w[a][y] + w[b][y]);
        if (p > 0) s += std::pow(p, beta) * std::pow(py[y], 1 - beta);
      }
      e += px[a] * px[b] * s;
    }
  return std::log2(e) / (beta - 1);
}

}  // namespace

TEST_CASE("hash push-forward") {
  const auto j = JointPmf::make({{0.1, 0.2}, {0.3, 0.05}, {0.15, 0.2}});
  const auto id = pa_apply_hash(j, identity_hash(3));
  for (std::size_t i = 0; i < j.cells(); ++i) CHECK(id.probs()[i] == j.probs()[i]);

  const auto c = pa_apply_hash(j, constant_hash(3, 2, 1));
  CHECK(c(0, 0) == 0.0);
  CHECK(c(1, 0) == doctest::Approx(0.55));
  CHECK(c(1, 1) == doctest::Approx(0.45));

  // parity of two bits on a uniform 4 x 1 joint
  const auto u = testutil::uniform_joint(4, 1);
  const auto h = affine_hash(2, {0b11}, 0);
  CHECK(h.table == std::vector<std::size_t>{0, 1, 1, 0});
  const auto r = pa_apply_hash(u, h);
  CHECK(r.nx() == 2);
  CHECK(r(0, 0) == 0.5);
  CHECK(r(1, 0) == 0.5);

  CHECK_THROWS_AS(pa_apply_hash(j, identity_hash(4)), DomainMismatch);
  HashSpec bad = identity_hash(3);
  bad.range = 2;
  CHECK_THROWS_AS(pa_apply_hash(j, bad), DomainMismatch);
}

TEST_CASE("exhaustive hash search") {
  const auto ind = independent(Pmf::uniform(3), Pmf::make({0.3, 0.7}));
  for (double b : {0.5, 1.0, 2.0}) {
    const auto r = pa_min_divergence_exhaustive(ind, 3, b);
    CHECK(std::abs(r.value) <= 1e-12);
    CHECK(r.enumerated == 27);
  }
  for (const auto& j : testutil::random_joints(61, 5, 4)) {
    const auto r = pa_min_divergence_exhaustive(j, 1, 0.5);
    CHECK(std::abs(r.value) <= 1e-12);
  }
  // brute force over all tables with the direct oracle
  const auto j = JointPmf::make({{0.3, 0.05}, {0.1, 0.2}, {0.05, 0.3}});
  double best = INFINITY;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c) {
        const std::vector<std::size_t> t = {a, b, c};
        best = std::min(best, hashed_divergence(j, t, 2, 0.5));
      }
  const auto r = pa_min_divergence_exhaustive(j, 2, 0.5);
  CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
  // mirror-image tables tie, so compare values rather than tables
  CHECK(hashed_divergence(j, r.argmin.table, 2, 0.5) == doctest::Approx(best).epsilon(1e-12));

  std::size_t count = 0;
  std::vector<std::size_t> first, last;
  for_each_hash(3, 2, [&](const HashSpec& h) {
    if (count == 0) first = h.table;
    last = h.table;
    ++count;
  });
  CHECK(count == 8);
  CHECK(first == std::vector<std::size_t>{0, 0, 0});
  CHECK(last == std::vector<std::size_t>{1, 1, 1});
  CHECK_THROWS_AS(for_each_hash(21, 2, [](const HashSpec&) {}), EnumerationCap);
}

TEST_CASE("one-shot hashing bound holds for every table") {
  const auto j = power(testutil::bsc_joint(0.2), 2);
  const double beta = 0.5;
  // the lemma check on n = 2, M = 2
  for (const double a : {0.5, 0.7, 0.9}) {
    const double lower = alpha_weight(a, beta) * (1.0 - h_tilde(j, a, beta).value);
    CHECK(pa_min_divergence_exhaustive(j, 2, beta).value >= lower - 1e-10);
  }
  const auto chk = check_one_shot_pa_bound(j, 2, beta, {0.5, 0.6, 0.8, 0.95});
  CHECK(chk.pass);
  CHECK(chk.hashes == 16);
  CHECK(chk.comparisons == 16 * 4 * 2);
  CHECK(chk.worst_margin >= -1e-10);
  CHECK_THROWS_AS(check_one_shot_pa_bound(j, 2, 1.5, {0.5}), InvalidOrder);
}

TEST_CASE("affine family") {
  const auto ind = independent(Pmf::uniform(4), Pmf::make({0.4, 0.6}));
  const auto r = pa_universal_family_divergence(ind, 4, 2.0, 7, 64);
  CHECK(std::abs(r.best.value_bits) <= 1e-12);
  const auto again = pa_universal_family_divergence(ind, 4, 2.0, 7, 64);
  CHECK(again.best.value_bits == r.best.value_bits);
  CHECK(again.ensemble.value_bits == r.ensemble.value_bits);
  CHECK(again.ensemble.stderr_bits == r.ensemble.stderr_bits);
  CHECK(r.best.value_bits <= r.ensemble.value_bits + 1e-12);

  Rng rng(62);
  const auto j = random_joint(rng, 8, 2);
  const auto f = pa_universal_family_divergence(j, 2, 1.5, 3, 128);
  CHECK(f.best.value_bits <= f.ensemble.value_bits + 1e-12);
  CHECK(f.best.value_bits >= pa_min_divergence_exhaustive(j, 2, 1.5).value - 1e-12);

  CHECK_THROWS_AS(pa_universal_family_divergence(ind, 4, 2.5, 1), BetaOutOfFamilyRange);
  CHECK_THROWS_AS(pa_universal_family_divergence(ind, 4, 0.5, 1), BetaOutOfFamilyRange);
  CHECK_THROWS_AS(pa_universal_family_divergence(ind, 3, 1.5, 1), NonPowerOfTwoAlphabet);
  CHECK_THROWS_AS(pa_universal_family_divergence(testutil::uniform_joint(3, 2), 2, 1.5, 1),
                  NonPowerOfTwoAlphabet);
}

TEST_CASE("codebook size rounding") {
  CHECK(round_codebook_size(3, 0.5).M == 3);  // 2^1.5 = 2.83
  CHECK(round_codebook_size(2, 0.0).M == 1);
  CHECK(round_codebook_size(1, 0.1).M == 1);
  CHECK(round_codebook_size(4, 1.0).M == 16);
  CHECK(round_codebook_size(3, 0.5).note.find("2.8284") != std::string::npos);
  CHECK_THROWS_AS(round_codebook_size(2, -1.0), InvalidRate);
}

TEST_CASE("channel power") {
  const auto w = CondPmf::make({{0.9, 0.1}, {0.2, 0.8}});
  const auto w2 = channel_power(w, 2);
  REQUIRE(w2.size() == 16);
  // row x = (1, 0), column y = (0, 1)
  CHECK(w2[2 * 4 + 1] == doctest::Approx(0.2 * 0.1));
  CHECK_THROWS_AS(channel_power(w, 30), SizeOverflow);
}

TEST_CASE("soft covering: exact ensemble") {
  const std::vector<double> px = {0.3, 0.7};
  const std::vector<std::vector<double>> rows = {{0.8, 0.2}, {0.25, 0.75}};
  const auto w = CondPmf::make(rows);
  const auto joint = joint_from_channel(Pmf::make(px), w);

  SUBCASE("M = 1 gives I_beta of the n-fold joint") {
    for (std::size_t n : {1, 2}) {
      for (double b : {0.5, 2.0, 3.0}) {
        const auto r = sc_expected_divergence_exact(Pmf::make(px), w, n, 1, b);
        const double ib = mutual_info_variant(MutualInfoVariant::I, joint, ExtOrder::finite(b)).value;
        CHECK(r.value_bits == doctest::Approx(n * ib).epsilon(1e-12));
        CHECK(r.estimator == "exact-enumeration");
        CHECK_FALSE(r.stderr_bits.has_value());
      }
    }
    const auto r1 = sc_expected_divergence_exact(Pmf::make(px), w, 1, 1, 1.0);
    CHECK(r1.value_bits == doctest::Approx(shannon_mutual_info(joint)).epsilon(1e-12));
  }
  SUBCASE("two codewords against the explicit double sum") {
    for (double b : {0.5, 2.0}) {
      CHECK(sc_expected_divergence_exact(Pmf::make(px), w, 1, 2, b).value_bits ==
            doctest::Approx(sc_two_codewords(px, rows, b)).epsilon(1e-12));
    }
  }
  SUBCASE("constant channel") {
    const auto c = CondPmf::make({{0.4, 0.6}, {0.4, 0.6}, {0.4, 0.6}});
    for (std::size_t M : {1, 2, 3})
      for (double b : {0.5, 1.0, 2.0})
        CHECK(std::abs(sc_expected_divergence_exact(Pmf::make({0.2, 0.3, 0.5}), c, 1, M, b)
                           .value_bits) <= 1e-12);
  }
  SUBCASE("one-shot bound") {
    for (double b : {0.5, 2.0}) {
      for (std::size_t M : {1, 2, 3}) {
        const auto r = sc_expected_divergence_exact(Pmf::make(px), w, 2, M, b);
        const auto chk = check_one_shot_sc_bound(Pmf::make(px), w, 2, M, b, r);
        CHECK(chk.pass);
        if (M == 1 && b > 1) CHECK(std::abs(chk.margin) <= 1e-10);
      }
    }
    Rng rng(63);
    for (int t = 0; t < 20; ++t) {
      const auto ch = random_channel(rng, 2, 2);
      const auto p = random_pmf(rng, 2);
      const auto r = sc_expected_divergence_exact(p, ch, 1, 2, 0.5);
      CHECK(check_one_shot_sc_bound(p, ch, 1, 2, 0.5, r).margin >= -1e-10);
    }
  }
  CHECK_THROWS_AS(sc_expected_divergence_exact(Pmf::make(px), w, 4, 6, 2.0), EnumerationCap);
}

TEST_CASE("soft covering: Monte Carlo") {
  const auto px = Pmf::make({0.3, 0.7});
  const auto w = CondPmf::make({{0.8, 0.2}, {0.25, 0.75}});
  const auto exact = sc_expected_divergence_exact(px, w, 2, 3, 2.0);
  const auto mc = sc_expected_divergence_mc(px, w, 2, 3, 2.0, 4000, 11);
  REQUIRE(mc.stderr_bits.has_value());
  CHECK(std::abs(mc.value_bits - exact.value_bits) <= 3 * *mc.stderr_bits);
  CHECK_FALSE(mc.caveat.empty());

  const auto again = sc_expected_divergence_mc(px, w, 2, 3, 2.0, 4000, 11, 3);
  CHECK(again.value_bits == mc.value_bits);
  CHECK(*again.stderr_bits == *mc.stderr_bits);

  const auto big = sc_expected_divergence_mc(px, w, 2, 3, 2.0, 16000, 12);
  const double ratio = *mc.stderr_bits / *big.stderr_bits;
  CHECK(ratio >= 2.0 * 0.7);
  CHECK(ratio <= 2.0 * 1.3);

  const auto kl = sc_expected_divergence_mc(px, w, 1, 2, 1.0, 2000, 5);
  const auto kl_exact = sc_expected_divergence_exact(px, w, 1, 2, 1.0);
  CHECK(std::abs(kl.value_bits - kl_exact.value_bits) <= 3 * *kl.stderr_bits);
  CHECK_THROWS_AS(sc_expected_divergence_mc(px, w, 1, 2, 1.0, 999, 5), InvalidParameter);
}

TEST_CASE("records serialize to CSV") {
  std::ostringstream out;
  CsvWriter w(out);
  w.comment(csv_comment(7, 1e-9));
  SimRecord r{2, 3, 0.5, "monte-carlo(N=1000,seed=7)", 0.25, 0.01, 7, "M=3 given", ""};
  write_sim_records(w, {r});
  const std::string text = out.str();
  CHECK(text.rfind("# renyikit ", 0) == 0);
  CHECK(text.find("seed=7 tol=1e-09") != std::string::npos);
  CHECK(text.find("n,M,beta,estimator,value_bits,stderr,seed,rounding_note,caveat\r\n") !=
        std::string::npos);
  CHECK(text.find("2,3,0.5,\"monte-carlo(N=1000,seed=7)\",0.25,0.01,7,M=3 given,\r\n") !=
        std::string::npos);
  CHECK(csv_escape("a\"b") == "\"a\"\"b\"");
  CHECK(csv_escape("plain") == "plain");
}
