// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/polytope.hpp"

#include <algorithm>

#include "okbody/error.hpp"

namespace okbody {

namespace {

Scalar dot(const Point& a, const Point& b) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Scalar cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Counter-clockwise hull of distinct 2D points, collinear points dropped.
std::vector<Point> hull2(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && sgn(cross2(h[k - 2], h[k - 1], p)) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && sgn(cross2(h[k - 2], h[k - 1], pts[i])) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct FullHull {
  std::vector<Point> vertices;
  std::vector<Halfspace> facets;
  Scalar volume;
};

FullHull full_hull_1(const std::vector<Point>& pts) {
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
  FullHull h;
  h.vertices = {*lo, *hi};
  h.facets = {{{Scalar(1)}, (*hi)[0]}, {{Scalar(-1)}, -(*lo)[0]}};
  h.volume = (*hi)[0] - (*lo)[0];
  return h;
}

FullHull full_hull_2(const std::vector<Point>& pts) {
  FullHull h;
  h.vertices = hull2(pts);
  const auto& v = h.vertices;
  Scalar twice_area = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    twice_area += p[0] * q[1] - p[1] * q[0];
    Point normal = {q[1] - p[1], p[0] - q[0]};
    Scalar offset = dot(normal, p);
    h.facets.push_back({std::move(normal), std::move(offset)});
  }
  h.volume = abs(twice_area) / 2;
  return h;
}

Point primitive_direction(Point n) {
  for (const auto& c : n) {
    if (sgn(c) != 0) {
      Scalar s = abs(c);
      for (auto& x : n) x /= s;
      break;
    }
  }
  return n;
}

FullHull full_hull_3(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<Halfspace> planes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Point normal = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
        if (std::all_of(normal.begin(), normal.end(), [](const Scalar& c) { return sgn(c) == 0; })) continue;
        normal = primitive_direction(std::move(normal));
        Scalar offset = dot(normal, pts[i]);
        bool le = true, ge = true;
        for (const auto& p : pts) {
          int s = sgn(dot(normal, p) - offset);
          if (s > 0) le = false;
          if (s < 0) ge = false;
          if (!le && !ge) break;
        }
        if (!le && !ge) continue;
        if (!le) {
          for (auto& c : normal) c = -c;
          offset = -offset;
        }
        bool seen = std::any_of(planes.begin(), planes.end(),
                                [&](const Halfspace& h) { return h.normal == normal && h.offset == offset; });
        if (!seen) planes.push_back({normal, offset});
      }
    }
  }

  FullHull h;
  h.facets = planes;
  std::vector<std::vector<Point>> polygons;
  for (const auto& plane : planes) {
    std::vector<Point> on;
    for (const auto& p : pts)
      if (dot(plane.normal, p) == plane.offset) on.push_back(p);
    // Chart: drop a coordinate along which the normal is nonzero.
    std::size_t drop = 0;
    while (sgn(plane.normal[drop]) == 0) ++drop;
    std::vector<Point> chart;
    for (const auto& p : on) {
      Point c;
      for (std::size_t t = 0; t < 3; ++t)
        if (t != drop) c.push_back(p[t]);
      chart.push_back(std::move(c));
    }
    std::vector<Point> flat;
    for (const auto& c : chart) flat.push_back({c[0], c[1]});
    auto ring = hull2(flat);
    std::vector<Point> polygon;
    for (const auto& r : ring) {
      for (std::size_t t = 0; t < chart.size(); ++t)
        if (chart[t][0] == r[0] && chart[t][1] == r[1]) {
          polygon.push_back(on[t]);
          break;
        }
    }
    for (const auto& v : polygon) h.vertices.push_back(v);
    polygons.push_back(std::move(polygon));
  }
  std::sort(h.vertices.begin(), h.vertices.end());
  h.vertices.erase(std::unique(h.vertices.begin(), h.vertices.end()), h.vertices.end());

  Point centroid(3, Scalar(0));
  for (const auto& v : h.vertices)
    for (std::size_t t = 0; t < 3; ++t) centroid[t] += v[t];
  for (auto& c : centroid) c /= static_cast<long>(h.vertices.size());

  Scalar six_volume = 0;
  for (const auto& poly : polygons) {
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      Scalar det = dot(sub(poly[0], centroid), cross(sub(poly[i], centroid), sub(poly[i + 1], centroid)));
      six_volume += abs(det);
    }
  }
  h.volume = six_volume / 6;
  return h;
}

FullHull full_hull(std::size_t dim, const std::vector<Point>& pts) {
  switch (dim) {
    case 1:
      return full_hull_1(pts);
    case 2:
      return full_hull_2(pts);
    default:
      return full_hull_3(pts);
  }
}

bool satisfies(const std::vector<Halfspace>& facets, const Point& p) {
  return std::all_of(facets.begin(), facets.end(), [&](const Halfspace& h) { return dot(h.normal, p) <= h.offset; });
}

}  // namespace

Polytope Polytope::hull(std::size_t dim, std::vector<Point> points) {
  if (dim == 0 || dim > 3) throw UnsupportedDimension("exact hulls are supported for dimension 1..3, got " + std::to_string(dim));
  for (const auto& p : points)
    if (p.size() != dim) throw ModelError("hull: point of wrong dimension");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Polytope P;
  P.dim_ = dim;
  if (points.empty()) return P;

  // Affine hull: reduced echelon basis of the difference vectors.
  P.base_ = points.front();
  std::vector<Point> dirs;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Point v = sub(points[i], P.base_);
    for (std::size_t r = 0; r < dirs.size(); ++r) {
      Scalar c = v[pivots[r]];
      if (sgn(c) == 0) continue;
      for (std::size_t t = 0; t < dim; ++t) v[t] -= c * dirs[r][t];
    }
    auto lead = std::find_if(v.begin(), v.end(), [](const Scalar& c) { return sgn(c) != 0; });
    if (lead == v.end()) continue;
    std::size_t col = static_cast<std::size_t>(lead - v.begin());
    Scalar inv = 1 / v[col];
    for (auto& c : v) c *= inv;
    for (auto& d : dirs) {
      Scalar c = d[col];
      if (sgn(c) == 0) continue;
      for (std::size_t t = 0; t < dim; ++t) d[t] -= c * v[t];
    }
    dirs.push_back(std::move(v));
    pivots.push_back(col);
    if (dirs.size() == dim) break;
  }
  P.affine_dim_ = static_cast<int>(dirs.size());

  if (dirs.size() == dim) {
    auto h = full_hull(dim, points);
    P.vertices_ = std::move(h.vertices);
    std::sort(P.vertices_.begin(), P.vertices_.end());
    P.facets_ = std::move(h.facets);
    P.volume_ = std::move(h.volume);
    return P;
  }

  P.directions_ = dirs;
  P.chart_ = pivots;
  std::sort(P.chart_.begin(), P.chart_.end());
  if (dirs.empty()) {
    P.vertices_ = {points.front()};
    return P;
  }
  std::vector<Point> projected;
  for (const auto& p : points) {
    Point c;
    for (auto t : P.chart_) c.push_back(p[t]);
    projected.push_back(std::move(c));
  }
  auto h = full_hull(dirs.size(), projected);
  P.chart_facets_ = h.facets;
  P.chart_vertices_ = h.vertices;
  for (const auto& cv : h.vertices) {
    for (std::size_t i = 0; i < projected.size(); ++i)
      if (projected[i] == cv) {
        P.vertices_.push_back(points[i]);
        break;
      }
  }
  std::sort(P.vertices_.begin(), P.vertices_.end());
  return P;
}

Scalar Polytope::volume() const { return volume_; }

bool Polytope::contains(const Point& p) const {
  if (p.size() != dim_) throw ModelError("contains: point of wrong dimension");
  if (vertices_.empty()) return false;
  if (affine_dim_ == static_cast<int>(dim_)) return satisfies(facets_, p);
  Point v = sub(p, base_);
  // Directions are in reduced echelon form over their pivot columns.
  for (const auto& d : directions_) {
    auto lead = std::find_if(d.begin(), d.end(), [](const Scalar& c) { return sgn(c) != 0; });
    Scalar c = v[static_cast<std::size_t>(lead - d.begin())];
    for (std::size_t t = 0; t < dim_; ++t) v[t] -= c * d[t];
  }
  if (std::any_of(v.begin(), v.end(), [](const Scalar& c) { return sgn(c) != 0; })) return false;
  if (directions_.empty()) return true;
  Point c;
  for (auto t : chart_) c.push_back(p[t]);
  return satisfies(chart_facets_, c);
}

std::pair<Point, Point> Polytope::bounding_box() const {
  if (vertices_.empty()) return {};
  Point lo = vertices_.front(), hi = vertices_.front();
  for (const auto& v : vertices_)
    for (std::size_t t = 0; t < dim_; ++t) {
      if (v[t] < lo[t]) lo[t] = v[t];
      if (v[t] > hi[t]) hi[t] = v[t];
    }
  return {lo, hi};
}

std::vector<std::vector<long>> dilated_lattice_points(const Polytope& p, unsigned m) {
  std::vector<std::vector<long>> out;
  if (p.empty()) return out;
  const std::size_t d = p.dimension();
  if (m == 0) {
    out.emplace_back(d, 0);
    return out;
  }
  auto [lo, hi] = p.bounding_box();
  std::vector<long> from(d), to(d);
  for (std::size_t t = 0; t < d; ++t) {
    from[t] = ceil_of(lo[t] * m).get_si();
    to[t] = floor_of(hi[t] * m).get_si();
    if (from[t] > to[t]) return out;
  }
  std::vector<long> cur = from;
  Point scaled(d);
  for (;;) {
    for (std::size_t t = 0; t < d; ++t) scaled[t] = Scalar(cur[t], m);
    for (auto& s : scaled) s.canonicalize();
    if (p.contains(scaled)) out.push_back(cur);
    std::size_t t = d;
    while (t-- > 0) {
      if (cur[t] < to[t]) {
        ++cur[t];
        break;
      }
      cur[t] = from[t];
    }
    if (t == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace okbody
