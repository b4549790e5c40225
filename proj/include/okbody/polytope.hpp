// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Exact convex hulls and volumes of rational point sets in dimension <= 3.

#pragma once

#include <cstddef>
#include <vector>

#include "okbody/kernel.hpp"

namespace okbody {

using Point = std::vector<Scalar>;

/// Halfspace normal . x <= offset.
struct Halfspace {
  Point normal;
  Scalar offset;
};

class Polytope {
 public:
  Polytope() = default;

  /// Convex hull of `points` in R^dim. Throws UnsupportedDimension for dim > 3.
  static Polytope hull(std::size_t dim, std::vector<Point> points);

  std::size_t dimension() const { return dim_; }
  /// Extreme points, sorted lexicographically.
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Dimension of the affine hull (-1 when empty).
  int affine_dimension() const { return affine_dim_; }
  bool empty() const { return vertices_.empty(); }

  /// Exact Euclidean dim-volume; 0 for lower-dimensional hulls.
  Scalar volume() const;
  bool contains(const Point& p) const;
  /// Facet inequalities; only populated for full-dimensional hulls.
  const std::vector<Halfspace>& facets() const { return facets_; }

  /// Coordinatewise bounding box [lo, hi].
  std::pair<Point, Point> bounding_box() const;

 private:
  std::size_t dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;
  Scalar volume_ = 0;

  // Affine hull data for lower-dimensional hulls: base + span(directions),
  // coordinates `chart` are injective on it, `chart_hull` is the hull there.
  Point base_;
  std::vector<Point> directions_;
  std::vector<std::size_t> chart_;
  std::vector<Halfspace> chart_facets_;
  std::vector<Point> chart_vertices_;
};

/// Integer points of m * P.
std::vector<std::vector<long>> dilated_lattice_points(const Polytope& p, unsigned m);

}  // namespace okbody
