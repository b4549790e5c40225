// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Flag multivaluations on the line and on coordinate models.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "okbody/kernel.hpp"

namespace okbody {

/// A point of the projective line; `point` empty means infinity.
struct CurvePoint {
  std::optional<Scalar> point;
};

/// Coordinate flag: Y_i = {x_{order[0]} = c, ..., x_{order[i-1]} = c} through `center`.
struct CoordinateFlag {
  std::vector<std::size_t> order;
  std::vector<Scalar> center;
};

class Flag {
 public:
  static Flag curve_point(Scalar p) { return Flag(CurvePoint{std::move(p)}); }
  static Flag at_infinity() { return Flag(CurvePoint{std::nullopt}); }
  /// Throws FlagInapplicable if `order` is not a permutation or sizes differ.
  static Flag coordinate(std::vector<std::size_t> order, std::vector<Scalar> center);
  static Flag coordinate_origin(std::size_t d);

  std::size_t dimension() const;
  bool is_curve() const { return std::holds_alternative<CurvePoint>(kind_); }
  const CurvePoint* as_curve() const { return std::get_if<CurvePoint>(&kind_); }
  const CoordinateFlag* as_coordinate() const { return std::get_if<CoordinateFlag>(&kind_); }

  /// "point(2)", "point(inf)", "coordinate([1,2],[0,0])" (1-based order).
  std::string to_string() const;

 private:
  explicit Flag(std::variant<CurvePoint, CoordinateFlag> k) : kind_(std::move(k)) {}
  std::variant<CurvePoint, CoordinateFlag> kind_;
};

struct ValuationVector {
  std::vector<std::int64_t> entries;

  std::size_t size() const { return entries.size(); }
  auto operator<=>(const ValuationVector&) const = default;
  bool operator==(const ValuationVector&) const = default;
  ValuationVector operator+(const ValuationVector& o) const;
  ValuationVector operator-(const ValuationVector& o) const;
  bool is_zero() const;
  std::string to_string() const;
};

/// nu_{Y.}(f): iterated vanishing orders along the flag. Throws
/// UndefinedValuation for f = 0 and FlagInapplicable when the flag does not
/// match the element's variables.
ValuationVector multivaluation(const RationalFunction& f, const Flag& flag);

struct ValuedElement {
  ValuationVector value;
  RationalFunction representative;
};

/// The set nu(V \ 0) with one representative per value, sorted by value,
/// computed by valuation-echelon reduction of the basis.
std::vector<ValuedElement> valuation_image(const Basis& v, const Flag& flag);

}  // namespace okbody
