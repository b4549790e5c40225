// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include <random>
#include <set>

#include "doctest.h"
#include "okbody/algebra.hpp"
#include "okbody/error.hpp"
#include "okbody/valuation.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace okbody;

namespace {

const Variables kX = {"x"};
const Variables kXY = {"x1", "x2"};

Poly lin(const Scalar& root) { return Poly::variable(kX, 0) - Poly::constant(kX, root); }

}  // namespace

TEST_CASE("curve valuations at points and at infinity") {
  const Poly x = Poly::variable(kX, 0);
  const RationalFunction f(x.pow(2) * lin(1), {{lin(2), 1}});
  CHECK(multivaluation(f, Flag::curve_point(0)).entries == std::vector<std::int64_t>{2});
  CHECK(multivaluation(f, Flag::curve_point(1)).entries == std::vector<std::int64_t>{1});
  CHECK(multivaluation(f, Flag::curve_point(2)).entries == std::vector<std::int64_t>{-1});
  CHECK(multivaluation(f, Flag::at_infinity()).entries == std::vector<std::int64_t>{-2});
  CHECK_THROWS_AS(multivaluation(RationalFunction(Poly(kX)), Flag::curve_point(0)), UndefinedValuation);
}

TEST_CASE("coordinate flag valuations follow the flag order") {
  const Poly n = Poly::monomial(kXY, {1, 2}) + Poly::monomial(kXY, {2, 0});
  const RationalFunction f(n, {{Poly::variable(kXY, 0), 1}});
  CHECK(multivaluation(f, Flag::coordinate({0, 1}, {0, 0})).entries == std::vector<std::int64_t>{0, 2});
  CHECK(multivaluation(f, Flag::coordinate({1, 0}, {0, 0})).entries == std::vector<std::int64_t>{0, 1});
  // Centered at (1, 0): x1 - 1 = 0 does not divide the numerator.
  CHECK(multivaluation(f, Flag::coordinate({0, 1}, {1, 0})).entries == std::vector<std::int64_t>{0, 0});
  CHECK_THROWS_AS(multivaluation(f, Flag::curve_point(0)), FlagInapplicable);
  CHECK_THROWS_AS(Flag::coordinate({0, 0}, {0, 0}), FlagInapplicable);
}

TEST_CASE("valuation vectors order lexicographically") {
  CHECK(ValuationVector{{0, 5}} < ValuationVector{{1, 0}});
  CHECK((ValuationVector{{1, 2}} + ValuationVector{{3, -1}}) == ValuationVector{{4, 1}});
  CHECK(ValuationVector{{0, 0}}.is_zero());
  CHECK(ValuationVector{{1, -2}}.to_string() == "(1,-2)");
}

TEST_CASE("valuation image values are the pivot columns of the oracle") {
  std::mt19937_64 rng(3);
  const std::vector<std::pair<ModelPtr, Flag>> cases = {
      {dyadic_curve(Scalar(1, 2), {}), Flag::curve_point(0)},
      {dyadic_curve(Scalar(1, 2), {}), Flag::curve_point(1)},
      {dyadic_curve(Scalar(1, 2), {}), Flag::at_infinity()},
      {big_line_bundle_curve(2), Flag::curve_point(Scalar(1, 3))},
      {polytope_monomial({{0, 0}, {1, 0}, {0, 1}}), Flag::coordinate_origin(2)},
      {polytope_monomial({{0, 0}, {1, 0}, {0, 1}}), Flag::coordinate({1, 0}, {0, 0})},
      {parity_monomial(), Flag::coordinate_origin(1)},
  };
  for (const auto& [model, flag] : cases) {
    for (int trial = 0; trial < 8; ++trial) {
      const unsigned m = 1 + static_cast<unsigned>(rng() % 8);
      const Basis v = testing_support::random_subspace(*model, m, 1 + rng() % 6, rng);
      const auto image = valuation_image(v, flag);
      const auto expected = testing_support::oracle_values(v, flag);
      REQUIRE(image.size() == v.dimension());
      std::set<ValuationVector> got;
      for (const auto& e : image) {
        got.insert(e.value);
        CHECK(multivaluation(e.representative, flag) == e.value);
        CHECK(v.contains(e.representative));
      }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("valuation axioms on random pairs") {
  std::mt19937_64 rng(5);
  const ModelPtr curve = dyadic_curve(Scalar(1, 2), {});
  const ModelPtr tri = polytope_monomial({{0, 0}, {1, 0}, {0, 1}});
  for (const auto& [model, flag] :
       std::vector<std::pair<ModelPtr, Flag>>{{curve, Flag::curve_point(1)}, {tri, Flag::coordinate_origin(2)}}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = testing_support::random_element(*model, 1 + rng() % 6, rng);
      const auto g = testing_support::random_element(*model, 1 + rng() % 6, rng);
      if (f.is_zero() || g.is_zero()) continue;
      const auto vf = multivaluation(f, flag), vg = multivaluation(g, flag);
      CHECK(multivaluation(f * g, flag) == vf + vg);
      CHECK(multivaluation(f * Scalar(-5, 3), flag) == vf);
      const auto s = f + g;
      if (!s.is_zero()) CHECK(multivaluation(s, flag) >= std::min(vf, vg));
    }
  }
}
