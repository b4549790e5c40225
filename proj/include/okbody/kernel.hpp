// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Exact arithmetic substrate: rationals, sparse multivariate polynomials,
// rational functions with declared factored denominators, and reduced
// echelon bases of the finite-dimensional spaces they span.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace okbody {

using Integer = mpz_class;
using Scalar = mpq_class;

/// Parses "a", "-a" or "a/b" into a canonical rational. Throws ParseError.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& q);
/// 12 significant digits, derived from the exact value.
std::string to_decimal(const Scalar& q);
/// Canonical num/den; throws ModelError for den = 0.
Scalar fraction(const Integer& num, const Integer& den);
Integer floor_of(const Scalar& q);
Integer ceil_of(const Scalar& q);

using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic with
/// the first variable most significant.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

using Variables = std::vector<std::string>;

class Poly {
 public:
  using Terms = std::map<Exponent, Scalar, GrlexLess>;

  Poly() = default;
  explicit Poly(Variables vars) : vars_(std::move(vars)) {}

  static Poly constant(const Variables& vars, const Scalar& c);
  static Poly variable(const Variables& vars, std::size_t index);
  static Poly monomial(const Variables& vars, Exponent e, const Scalar& c = 1);

  const Variables& variables() const { return vars_; }
  std::size_t num_variables() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  std::uint32_t total_degree() const;
  /// Degree in variable `index`; 0 for the zero polynomial.
  std::uint32_t degree_in(std::size_t index) const;
  Scalar coefficient(const Exponent& e) const;
  /// Coefficient of the grlex-largest term.
  const Scalar& leading_coefficient() const;

  void add_term(const Exponent& e, const Scalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Scalar& c) const;
  Poly pow(unsigned k) const;

  Scalar evaluate(std::span<const Scalar> point) const;
  /// P(x + shift), coordinatewise.
  Poly translated(std::span<const Scalar> shift) const;

  bool operator==(const Poly& o) const = default;
  /// Total order (variables, then terms) so polynomials can key maps.
  bool operator<(const Poly& o) const;

  std::string to_string() const;

 private:
  void require_same_variables(const Poly& o) const;

  Variables vars_;
  Terms terms_;
};

/// Multiplicity of `root` as a zero of a univariate polynomial.
std::uint32_t root_multiplicity(const Poly& p, const Scalar& root);
/// Exact quotient by (x - root)^k for a univariate polynomial.
Poly divide_by_linear(const Poly& p, const Scalar& root, std::uint32_t k = 1);

/// Declared irreducible denominator factor -> multiplicity. Factors are
/// normalized so their grlex-leading coefficient is 1.
using Factorization = std::map<Poly, std::uint32_t>;

Factorization factorization_lcm(const Factorization& a, const Factorization& b);
bool factorization_divides(const Factorization& a, const Factorization& b);

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Poly numerator, Factorization denominator = {});

  static RationalFunction constant(const Variables& vars, const Scalar& c);

  const Variables& variables() const { return num_.variables(); }
  const Poly& numerator() const { return num_; }
  const Factorization& factors() const { return den_; }
  /// Product of the declared factors, expanded.
  Poly denominator() const;
  bool is_zero() const { return num_.is_zero(); }

  /// Numerator N with f = N / shape; `shape` must be divisible by the factors of f.
  Poly numerator_over(const Factorization& shape) const;

  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator*(const Scalar& c) const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction pow(unsigned k) const;

  /// Equality as elements of the function field.
  bool equals(const RationalFunction& o) const;

  std::string to_string() const;

 private:
  Poly num_;
  Factorization den_;
};

/// A finite-dimensional space of rational functions sharing one denominator
/// shape, stored as reduced row-echelon coordinates over `support`.
class Basis {
 public:
  /// (column, value) pairs, columns increasing; the first entry is the pivot (value 1).
  using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

  Basis() = default;
  Basis(Variables vars, Factorization shape, std::vector<Exponent> support, std::vector<SparseRow> rows);

  const Variables& variables() const { return vars_; }
  const Factorization& shape() const { return shape_; }
  const std::vector<Exponent>& support() const { return support_; }
  const std::vector<SparseRow>& rows() const { return rows_; }
  std::vector<Scalar> dense_row(std::size_t i) const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<RationalFunction>& elements() const { return elements_; }
  std::size_t dimension() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  bool contains(const RationalFunction& f) const;
  bool same_span(const Basis& o) const;

 private:
  Variables vars_;
  Factorization shape_;
  std::vector<Exponent> support_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<RationalFunction> elements_;
};

/// Reduced row-echelon basis of span(elements). Elements are first brought
/// to the least common declared denominator; columns follow GrlexLess.
Basis echelonize(std::span<const RationalFunction> elements);
Basis echelonize(std::span<const RationalFunction> elements, const Variables& vars);

/// span{ f*g : f in a, g in b }.
Basis product_space(const Basis& a, const Basis& b);

}  // namespace okbody
