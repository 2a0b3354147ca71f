#include <cmath>

#include "doctest.h"
#include "renyikit/dist.hpp"
#include "renyikit/random.hpp"
#include "test_util.hpp"

using namespace renyikit;

TEST_CASE("validate accepts and rejects") {
  CHECK_NOTHROW(Pmf::make({0.5, 0.5}));
  CHECK_THROWS_AS(Pmf::make({0.5, 0.499}), NotNormalized);
  try {
    Pmf::make({0.5, 0.499});
  } catch (const NotNormalized& e) {
    CHECK(e.deviation() == doctest::Approx(-1e-3).epsilon(1e-9));
  }
  CHECK_NOTHROW(JointPmf::make({{0.25, 0.25}, {0.25, 0.25}}));
  CHECK_THROWS_AS(Pmf::make({1.5, -0.5}), NegativeMass);
  CHECK_THROWS_AS(Pmf::make({0.5, NAN}), NegativeMass);
  CHECK_THROWS_AS(Pmf::make({"a", "a"}, {0.5, 0.5}), DuplicateLabel);
  CHECK_THROWS_AS(JointPmf::make(2, 2, {0.5, 0.5}), ShapeMismatch);
  // within tolerance
  CHECK_NOTHROW(Pmf::make({0.5, 0.5 + 5e-13}));
}

TEST_CASE("marginals") {
  const auto u = testutil::uniform_joint(2, 2);
  CHECK(marginal_y(u)[0] == 0.5);
  CHECK(marginal_y(u)[1] == 0.5);
  const auto d = testutil::diag_uniform(2);
  CHECK(marginal_y(d)[0] == 0.5);
  CHECK(marginal_y(d)[1] == 0.5);
  const auto j = JointPmf::make({{0.1, 0.2}, {0.3, 0.4}});
  CHECK(marginal_y(j)[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(marginal_y(j)[1] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(marginal_x(j)[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(marginal_x(j)[1] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("condition_on_y") {
  const auto d = testutil::diag_uniform(2);
  auto c = condition_on_y(d);
  CHECK(c.x_given_y.row(0)[0] == 1.0);
  CHECK(c.x_given_y.row(0)[1] == 0.0);
  CHECK(c.x_given_y.row(1)[1] == 1.0);

  auto cu = condition_on_y(testutil::uniform_joint(2, 2));
  CHECK(cu.x_given_y.row(0)[0] == 0.5);
  CHECK(cu.x_given_y.row(1)[1] == 0.5);

  auto cz = condition_on_y(JointPmf::make({{0.4, 0.0}, {0.6, 0.0}}));
  CHECK(cz.py[0] == 1.0);
  CHECK(cz.py[1] == 0.0);
  CHECK(cz.x_given_y.has_row(0));
  CHECK_FALSE(cz.x_given_y.has_row(1));
  CHECK_THROWS_AS(cz.x_given_y.row(1), std::out_of_range);
  CHECK(cz.x_given_y.row(0)[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(cz.x_given_y.row(0)[1] == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("product") {
  const auto p = JointPmf::make({{0.1, 0.2}, {0.3, 0.4}});
  const auto point = JointPmf::make({{1.0}});
  const auto pp = product(p, point);
  REQUIRE(pp.nx() == 2);
  REQUIRE(pp.ny() == 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(pp.probs()[i] == p.probs()[i]);
  CHECK(pp.alphabet_x()[1] == "1,0");

  const auto uu = product(testutil::uniform_joint(2, 2), testutil::uniform_joint(2, 2));
  REQUIRE(uu.nx() == 4);
  for (double v : uu.probs()) CHECK(v == 1.0 / 16);

  const auto d3 = power(testutil::diag_uniform(2), 3);
  REQUIRE(d3.nx() == 8);
  REQUIRE(d3.ny() == 8);
  for (std::size_t x = 0; x < 8; ++x) {
    for (std::size_t y = 0; y < 8; ++y) {
      CHECK(d3(x, y) == (x == y ? 0.125 : 0.0));
    }
  }
  CHECK_THROWS_AS(product(uu, uu, 100), SizeOverflow);
  CHECK_THROWS_AS(power(testutil::uniform_joint(4, 4), 6), SizeOverflow);
}

TEST_CASE("random joints: reconstruction, product marginals, row existence") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t nx = 1 + rng.below(5);
    const std::size_t ny = 1 + rng.below(5);
    const auto j = random_joint(rng, nx, ny, t % 2 ? 0.4 : 0.0);
    const auto c = condition_on_y(j);
    const auto py = marginal_y(j);
    for (std::size_t y = 0; y < ny; ++y) {
      CHECK(c.x_given_y.has_row(y) == (py[y] > 0.0));
      for (std::size_t x = 0; x < nx; ++x) {
        const double rec = py[y] > 0.0 ? py[y] * c.x_given_y.row(y)[x] : 0.0;
        CHECK(std::abs(rec - j(x, y)) <= 1e-12);
      }
    }
    const auto k = random_joint(rng, 2, 3, 0.2);
    const auto pk = product(j, k);
    const auto mx = marginal_x(pk);
    const auto my = marginal_y(pk);
    const auto ex = product(marginal_x(j), marginal_x(k));
    const auto ey = product(marginal_y(j), marginal_y(k));
    for (std::size_t i = 0; i < mx.size(); ++i) CHECK(std::abs(mx[i] - ex[i]) <= 1e-12);
    for (std::size_t i = 0; i < my.size(); ++i) CHECK(std::abs(my[i] - ey[i]) <= 1e-12);
  }
}

TEST_CASE("joint_from_channel and condition_on_x invert each other") {
  Rng rng(5);
  const auto px = random_pmf(rng, 3);
  const auto w = random_channel(rng, 3, 4);
  const auto j = joint_from_channel(px, w);
  const auto c = condition_on_x(j);
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(c.px[x] == doctest::Approx(px[x]).epsilon(1e-14));
    for (std::size_t y = 0; y < 4; ++y) {
      CHECK(c.y_given_x.row(x)[y] == doctest::Approx(w.row(x)[y]).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(joint_from_channel(Pmf::uniform(2), w), AlphabetMismatch);
}

TEST_CASE("JSON round trip is bit exact") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto j = random_joint(rng, 3, 4, 0.2);
    const auto back = joint_from_json(to_json(j));
    REQUIRE(back.cells() == j.cells());
    for (std::size_t i = 0; i < j.cells(); ++i) CHECK(back.probs()[i] == j.probs()[i]);
    CHECK(back.alphabet_x() == j.alphabet_x());
    const auto p = random_pmf(rng, 5);
    const auto pb = pmf_from_json(to_json(p));
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(pb[i] == p[i]);
  }
  const auto j = joint_from_json(
      R"({"alphabet_x":["a","b"],"alphabet_y":["u","v"],"pmf":[[0.1,0.2],[0.3,0.4]]})");
  CHECK(j.alphabet_y()[1] == "v");
  CHECK(j(1, 0) == 0.3);
}

TEST_CASE("JSON errors carry location") {
  try {
    joint_from_json("{\n  \"pmf\": [[0.5, 0.5],\n  ]\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(joint_from_json(R"({"pmf":[[0.5],[0.5, 0.0]]})"), ShapeMismatch);
  CHECK_THROWS_AS(joint_from_json(R"({"pmf":[[0.5, 0.6]]})"), NotNormalized);
  CHECK_THROWS_AS(joint_from_json(R"({"p":[]})"), ParseError);
}
