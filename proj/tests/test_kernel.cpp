// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include <cstdlib>
#include <random>

#include "doctest.h"
#include "okbody/error.hpp"
#include "okbody/kernel.hpp"
#include "oracles.hpp"

using namespace okbody;

namespace {

const Variables kX = {"x"};
const Variables kXY = {"x1", "x2"};

Poly linear(const Scalar& root) { return Poly::variable(kX, 0) - Poly::constant(kX, root); }

RationalFunction random_element(std::mt19937_64& rng, const Variables& vars, const Factorization& shape,
                                unsigned degree) {
  Poly n(vars);
  for (unsigned k = 0; k <= degree; ++k) {
    Exponent e(vars.size(), 0);
    e[0] = k;
    if (vars.size() > 1) e[1] = static_cast<std::uint32_t>(rng() % 3);
    n.add_term(e, Scalar(static_cast<long>(rng() % 7) - 3));
  }
  return RationalFunction(n, shape);
}

}  // namespace

TEST_CASE("scalars parse canonically and render exact and decimal forms") {
  CHECK(parse_scalar("6/4") == Scalar(3, 2));
  CHECK(parse_scalar("-7") == Scalar(-7));
  CHECK(to_string(parse_scalar("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
  CHECK(fraction(6, -4) == Scalar(-3, 2));
  CHECK_THROWS_AS(fraction(1, 0), ModelError);
  CHECK(floor_of(Scalar(-3, 2)) == -2);
  CHECK(ceil_of(Scalar(-3, 2)) == -1);
}

TEST_CASE("decimal rendering re-parses to the exact value within 12 digits") {
  for (const char* text : {"113/128", "128/121", "1/3", "-22/7", "122/1600", "1/1000000"}) {
    const Scalar q = parse_scalar(text);
    const double back = std::strtod(to_decimal(q).c_str(), nullptr);
    CHECK(std::abs(back - q.get_d()) <= 1e-11 * std::abs(q.get_d()));
  }
  CHECK(to_decimal(Scalar(0)) == "0");
  CHECK(to_decimal(Scalar(1, 64)) == "0.015625");
}

TEST_CASE("grlex order compares total degree first") {
  GrlexLess less;
  CHECK(less({0, 1}, {2, 0}));
  CHECK(less({0, 2}, {1, 1}));
  CHECK_FALSE(less({1, 1}, {1, 1}));
}

TEST_CASE("polynomial arithmetic, evaluation and translation") {
  const Poly x = Poly::variable(kX, 0);
  const Poly p = (x - Poly::constant(kX, 2)).pow(3);
  CHECK(p.total_degree() == 3);
  Scalar at[1] = {Scalar(2)};
  CHECK(p.evaluate(at) == 0);
  CHECK(root_multiplicity(p, 2) == 3);
  CHECK(root_multiplicity(p, 1) == 0);
  CHECK(divide_by_linear(p, 2, 2) == linear(2));
  Scalar shift[1] = {Scalar(2)};
  CHECK(p.translated(shift) == x.pow(3));
  CHECK((p - p).is_zero());
}

TEST_CASE("rational functions compare as field elements") {
  const RationalFunction a(Poly::constant(kX, 1), {{linear(1), 1}});
  const RationalFunction b(linear(2), {{linear(1), 1}, {linear(2), 1}});
  CHECK(a.equals(b));
  const RationalFunction sum = a + a;
  CHECK(sum.equals(a * Scalar(2)));
  CHECK((a - a).is_zero());
  CHECK(a.pow(3).factors().at(linear(1)) == 3);
}

TEST_CASE("echelon dimension matches the Bareiss rank oracle") {
  std::mt19937_64 rng(7);
  const Factorization shape = {{linear(1), 2}, {linear(3), 1}};
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned deg = 2 + static_cast<unsigned>(rng() % 4);
    std::vector<RationalFunction> gens;
    const unsigned count = 1 + static_cast<unsigned>(rng() % 6);
    for (unsigned i = 0; i < count; ++i) gens.push_back(random_element(rng, kX, shape, deg));
    // Append a dependent element half of the time.
    if (trial % 2 == 0 && gens.size() >= 2) gens.push_back(gens[0] * Scalar(3) - gens[1]);

    std::vector<std::vector<mpq_class>> matrix;
    for (const auto& g : gens) {
      std::vector<mpq_class> row(deg + 1);
      const Poly n = g.numerator_over(shape);
      for (const auto& [e, c] : n.terms()) row[e[0]] = c;
      matrix.push_back(row);
    }
    const Basis b = echelonize(gens);
    CHECK(b.dimension() == oracle::rational_rank(matrix));
    for (const auto& g : gens) CHECK(b.contains(g));
  }
}

TEST_CASE("echelon bases are reduced and unique for equal spans") {
  const Factorization shape = {{linear(0), 2}};
  const RationalFunction f(Poly::variable(kX, 0) + Poly::constant(kX, 1), shape);
  const RationalFunction g(Poly::constant(kX, 1), shape);
  const std::vector<RationalFunction> a = {f, g};
  const std::vector<RationalFunction> b = {f + g, f - g * Scalar(2)};
  const Basis ba = echelonize(a), bb = echelonize(b);
  CHECK(ba.same_span(bb));
  REQUIRE(ba.dimension() == bb.dimension());
  for (std::size_t i = 0; i < ba.dimension(); ++i) {
    CHECK(ba.rows()[i].front().second == 1);
    CHECK(ba.dense_row(i) == bb.dense_row(i));
  }
}

TEST_CASE("product spaces contain every product") {
  std::mt19937_64 rng(11);
  const Factorization s1 = {{linear(1), 1}};
  const Factorization s2 = {{linear(2), 1}};
  std::vector<RationalFunction> a, b;
  for (int i = 0; i < 3; ++i) a.push_back(random_element(rng, kX, s1, 2));
  for (int i = 0; i < 2; ++i) b.push_back(random_element(rng, kX, s2, 1));
  const Basis pa = echelonize(a), pb = echelonize(b);
  const Basis prod = product_space(pa, pb);
  for (const auto& f : a)
    for (const auto& g : b) CHECK(prod.contains(f * g));
  CHECK(prod.dimension() <= pa.dimension() * pb.dimension());
}

TEST_CASE("monomial product spaces agree with the general product") {
  const Factorization shape = {{Poly::variable(kXY, 0), 1}};
  std::vector<RationalFunction> a, b;
  for (std::uint32_t i = 0; i <= 2; ++i) a.emplace_back(Poly::monomial(kXY, {i, 2 - i}), shape);
  for (std::uint32_t i = 0; i <= 1; ++i) b.emplace_back(Poly::monomial(kXY, {i, 0}), shape);
  const Basis pa = echelonize(a), pb = echelonize(b);
  const Basis fast = product_space(pa, pb);
  std::vector<RationalFunction> all;
  for (const auto& f : a)
    for (const auto& g : b) all.push_back(f * g);
  const Basis slow = echelonize(all);
  CHECK(fast.dimension() == slow.dimension());
  CHECK(fast.same_span(slow));
}

TEST_CASE("mixed variable sets are rejected") {
  const RationalFunction f(Poly::variable(kX, 0));
  const RationalFunction g(Poly::variable(kXY, 0));
  CHECK_THROWS_AS((void)(f * g), ModelError);
}
