// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/geometry.hpp"

namespace okbody {

Geometry Geometry::laurent(std::size_t d) {
  Geometry g{Kind::Laurent, {}};
  if (d == 1) {
    g.variables = {"x"};
  } else {
    for (std::size_t j = 1; j <= d; ++j) g.variables.push_back("x" + std::to_string(j));
  }
  return g;
}

bool PrimeDivisor::operator<(const PrimeDivisor& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_;
  if (kind_ == Kind::Point) return point_ < o.point_;
  if (kind_ == Kind::Hyperplane) return index_ < o.index_;
  return false;
}

std::string PrimeDivisor::to_string(const Geometry* geometry) const {
  switch (kind_) {
    case Kind::Point:
      return "[" + point_.get_str() + "]";
    case Kind::Infinity:
      return "[inf]";
    case Kind::Hyperplane:
      if (geometry && index_ < geometry->variables.size()) return "[" + geometry->variables[index_] + "=0]";
      return "[x" + std::to_string(index_ + 1) + "=0]";
  }
  return "[?]";
}

}  // namespace okbody
