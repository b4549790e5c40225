// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include "okbody/kernel.hpp"

namespace okbody {

/// The fixed geometric models: the projective line (one variable "x"), or a
/// torus-embedded affine space of some dimension with coordinate hyperplanes.
struct Geometry {
  enum class Kind { Curve, Laurent };
  Kind kind = Kind::Curve;
  Variables variables;

  std::size_t dimension() const { return kind == Kind::Curve ? 1 : variables.size(); }
  static Geometry curve() { return {Kind::Curve, {"x"}}; }
  static Geometry laurent(std::size_t d);
};

/// Identifier of a prime divisor: a rational point or infinity on the line,
/// or a coordinate hyperplane {x_j = 0} on a Laurent model.
class PrimeDivisor {
 public:
  enum class Kind { Point, Infinity, Hyperplane };

  static PrimeDivisor point(Scalar p) { return PrimeDivisor(Kind::Point, std::move(p), 0); }
  static PrimeDivisor infinity() { return PrimeDivisor(Kind::Infinity, 0, 0); }
  static PrimeDivisor hyperplane(std::size_t j) { return PrimeDivisor(Kind::Hyperplane, 0, j); }

  Kind kind() const { return kind_; }
  const Scalar& value() const { return point_; }
  std::size_t index() const { return index_; }

  bool operator==(const PrimeDivisor& o) const {
    return kind_ == o.kind_ && point_ == o.point_ && index_ == o.index_;
  }
  bool operator<(const PrimeDivisor& o) const;

  /// "[2]", "[1/3]", "[inf]", "[x1=0]".
  std::string to_string(const Geometry* geometry = nullptr) const;

 private:
  PrimeDivisor(Kind k, Scalar p, std::size_t j) : kind_(k), point_(std::move(p)), index_(j) {}

  Kind kind_;
  Scalar point_;
  std::size_t index_;
};

}  // namespace okbody
