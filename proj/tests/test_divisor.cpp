// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include <random>

#include "doctest.h"
#include "okbody/algebra.hpp"
#include "okbody/divisor.hpp"
#include "okbody/error.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace okbody;

namespace {

const Variables kX = {"x"};

Poly x() { return Poly::variable(kX, 0); }
Poly lin(long root) { return x() - Poly::constant(kX, Scalar(root)); }
PrimeDivisor at(long q) { return PrimeDivisor::point(Scalar(q)); }

ModelPtr dyadic() {
  static const ModelPtr m = dyadic_curve(Scalar(1, 2), {});
  return m;
}

FiniteDivisor divisor(std::initializer_list<std::pair<PrimeDivisor, std::int64_t>> xs) {
  FiniteDivisor d;
  for (const auto& [c, k] : xs) d.set(c, k);
  return d;
}

/// floor(m / 2^i) at the point i, computed directly.
FiniteDivisor dyadic_floor(unsigned m) {
  FiniteDivisor d;
  for (long i = 1; (1u << i) <= m; ++i) d.set(at(i), static_cast<std::int64_t>(m >> i));
  return d;
}

}  // namespace

TEST_CASE("pole divisors") {
  const auto line = big_line_bundle_curve(1);
  const auto& geo = line->geometry();
  CHECK(pole_divisor(RationalFunction(Poly::constant(kX, 1), {{x(), 2}}), geo) == divisor({{at(0), 2}}));
  CHECK(pole_divisor(RationalFunction(x().pow(3)), geo) == divisor({{PrimeDivisor::infinity(), 3}}));
  CHECK(pole_divisor(RationalFunction(lin(1), {{x(), 1}, {lin(2), 1}}), geo) == divisor({{at(0), 1}, {at(2), 1}}));
  // Cancellation of a declared factor against the numerator.
  CHECK(pole_divisor(RationalFunction(lin(1) * x(), {{x(), 2}}), geo) == divisor({{at(0), 1}}));
  CHECK(pole_divisor(RationalFunction::constant(kX, 5), geo).empty());
  CHECK_THROWS_AS(pole_divisor(RationalFunction(Poly(kX)), geo), UndefinedValuation);
  CHECK(divisor({{at(0), 2}, {PrimeDivisor::infinity(), 1}}).to_string() == "{[0]: 2, [inf]: 1}");
}

TEST_CASE("D_m examples") {
  CHECK(compute_Dm(*big_line_bundle_curve(1), 3) == divisor({{at(0), 3}}));
  CHECK(compute_Dm(*dyadic(), 4) == divisor({{at(1), 2}, {at(2), 1}}));
  const auto line = big_line_bundle_curve(1);
  const RationalFunction one = RationalFunction::constant(kX, 1);
  const RationalFunction inv(Poly::constant(kX, 1), {{x(), 1}});
  const auto sub = generated_subalgebra(line, {{1, one}, {1, inv}}, 16);
  CHECK(compute_Dm(*sub, 2) == divisor({{at(0), 2}}));
  const auto half = generated_subalgebra(line, {{1, one}, {2, inv}}, 16);
  CHECK(compute_Dm(*half, 1).empty());
  CHECK(compute_Dm(*half, 5) == divisor({{at(0), 2}}));
}

TEST_CASE("D_m of complete curves is floor(mD)") {
  for (unsigned m = 1; m <= 64; ++m) CHECK(compute_Dm(*dyadic(), m) == dyadic_floor(m));
  for (unsigned m = 1; m <= 16; ++m)
    CHECK(compute_Dm(*big_line_bundle_curve(2), m) == divisor({{at(0), static_cast<std::int64_t>(2 * m)}}));
}

TEST_CASE("D_m does not depend on the chosen basis") {
  std::mt19937_64 rng(7);
  const auto& geo = dyadic()->geometry();
  for (unsigned m : {3u, 8u, 13u}) {
    const std::size_t r = dyadic()->graded_piece(m).dimension();
    std::vector<RationalFunction> gens;
    for (std::size_t i = 0; i < r + 2; ++i) gens.push_back(testing_support::random_element(*dyadic(), m, rng));
    const Basis other = echelonize(gens, geo.variables);
    REQUIRE(other.same_span(dyadic()->graded_piece(m)));
    CHECK(pole_supremum(gens, geo) == compute_Dm(*dyadic(), m));
  }
}

TEST_CASE("limit estimate for the dyadic curve") {
  const auto est = divisor_limit_estimate(*dyadic(), 16);
  const auto sup = est.sup_divisor();
  REQUIRE(sup.size() == 4);
  for (long i = 1; i <= 4; ++i) {
    CHECK(sup.at(at(i)) == oracle::floor_sup(Scalar(1, 1L << i), 16));
    CHECK(sup.at(at(i)) == Scalar(1, 1L << i));
    CHECK(est.find(at(i))->argmax == (1u << i));
  }
  CHECK(oracle::floor_sup(Scalar(1, 32), 16) == 0);
  CHECK(est.find(at(5)) == nullptr);
  for (const auto& r : est.records) {
    CHECK(r.sequence.size() == 16);
    for (std::size_t k = 0; k < r.divisors.size(); ++k) CHECK(16 % r.divisors[k] == 0);
  }
  CHECK(est.zero_pieces.empty());
}

TEST_CASE("estimate records empty pieces") {
  const auto half = generated_subalgebra(big_line_bundle_curve(1), {{2, RationalFunction::constant(kX, 1)}}, 16);
  const auto est = divisor_limit_estimate(*half, 6);
  CHECK(est.zero_pieces == std::vector<unsigned>{1, 3, 5});
  CHECK(est.records.empty());
  CHECK_THROWS_AS(compute_Dm(*half, 3), ModelError);
}

TEST_CASE("monotonicity along divisibility chains") {
  CHECK(divisibility_pairs(4) == std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {1, 3}, {1, 4}, {2, 4}});
  for (const auto& m : {dyadic(), big_line_bundle_curve(1), polytope_monomial({{0, 0}, {1, 0}, {0, 1}}),
                        subalgebra_rescale(dyadic(), 2)}) {
    const auto rep = check_monotonicity(*m, divisibility_pairs(24));
    CHECK(rep.passed);
    CHECK(rep.checks.size() == divisibility_pairs(24).size());
  }
  // D_2/2 = {[1]: 1/2} exceeds D_3/3 = {[1]: 1/3}; 2 does not divide 3, so this is data only.
  const auto rep = check_monotonicity(*dyadic(), divisibility_pairs(4));
  CHECK(rep.passed);
  bool seen = false;
  for (const auto& o : rep.incomparable_observations) seen |= (o.m1 == 2 && o.m2 == 3 && !o.holds);
  CHECK(seen);
}

TEST_CASE("inclusion into floor(m * Dhat)") {
  const auto est = divisor_limit_estimate(*dyadic(), 16);
  CHECK(check_inclusion(*dyadic(), est, 16).passed);
  const auto line = big_line_bundle_curve(1);
  CHECK(check_inclusion(*line, divisor_limit_estimate(*line, 12), 12).passed);

  const auto under = check_inclusion(*dyadic(), divisor_limit_estimate(*dyadic(), 2), 8);
  CHECK_FALSE(under.passed);
  REQUIRE_FALSE(under.failures.empty());
  CHECK(under.failures.front().m == 4);
  CHECK(under.failures.front().id == at(2));
  CHECK_FALSE(under.notes.empty());
}

TEST_CASE("coefficient decay and analytic bounds") {
  const auto est = divisor_limit_estimate(*dyadic(), 16);
  const auto decay = coefficient_decay(est, dyadic().get());
  REQUIRE(decay.coefficients.size() == 4);
  CHECK(decay.coefficients.front().second == Scalar(1, 2));
  std::map<unsigned, std::size_t> counts(decay.counts.begin(), decay.counts.end());
  CHECK(counts.at(1) == 0);
  CHECK(counts.at(2) == 1);
  CHECK(counts.at(3) == 1);
  CHECK(counts.at(4) == 2);
  CHECK(counts.at(8) == 3);
  CHECK(counts.at(10) == 3);
  CHECK(check_divisor_bounds(*dyadic(), est).passed);
}
