// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/okounkov.hpp"

#include <algorithm>
#include <set>

#include "okbody/error.hpp"

namespace okbody {

bool OkounkovSample::contains(unsigned m, const ValuationVector& v) const {
  if (m >= levels.size()) return false;
  const auto& pts = levels[m].points;
  return std::binary_search(pts.begin(), pts.end(), v);
}

std::size_t OkounkovSample::size() const {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.points.size();
  return n;
}

OkounkovSample collect_semigroup(const GradedAlgebraModel& model, const Flag& flag, unsigned M) {
  if (flag.dimension() != model.dimension())
    throw FlagInapplicable("flag " + flag.to_string() + " does not match model dimension " +
                           std::to_string(model.dimension()));
  OkounkovSample s;
  s.M = M;
  s.dimension = model.dimension();
  s.flag = flag;
  s.levels.reserve(M + 1);
  for (unsigned m = 0; m <= M; ++m) {
    const Basis& piece = model.graded_piece(m);
    SemigroupLevel level;
    level.m = m;
    level.piece_dimension = piece.dimension();
    for (auto& ve : valuation_image(piece, flag)) level.points.push_back(std::move(ve.value));
    std::sort(level.points.begin(), level.points.end());
    s.levels.push_back(std::move(level));
  }
  return s;
}

std::vector<Point> normalized_points(const OkounkovSample& sample) {
  std::set<Point> out;
  for (const auto& level : sample.levels) {
    if (level.m == 0) continue;
    for (const auto& v : level.points) {
      Point p(v.size());
      for (std::size_t t = 0; t < v.size(); ++t) {
        p[t] = Scalar(static_cast<long>(v.entries[t]), level.m);
        p[t].canonicalize();
      }
      out.insert(std::move(p));
    }
  }
  return {out.begin(), out.end()};
}

Polytope body_approx(const OkounkovSample& sample) {
  if (sample.dimension > 3)
    throw UnsupportedDimension("exact body hulls are limited to d <= 3 (d = " + std::to_string(sample.dimension) + ")");
  auto pts = normalized_points(sample);
  if (pts.empty()) throw ModelError("body_approx: the sample has no points in positive degree");
  return Polytope::hull(sample.dimension, std::move(pts));
}

Scalar body_volume(const Polytope& p) {
  if (p.dimension() > 3) throw UnsupportedDimension("exact volumes are limited to d <= 3");
  return p.volume();
}

std::vector<ClosureViolation> check_semigroup_closure(const OkounkovSample& sample, std::size_t limit) {
  std::vector<ClosureViolation> out;
  for (unsigned m1 = 0; m1 <= sample.M; ++m1) {
    for (unsigned m2 = m1; m1 + m2 <= sample.M; ++m2) {
      for (const auto& v1 : sample.levels[m1].points) {
        for (const auto& v2 : sample.levels[m2].points) {
          if (sample.contains(m1 + m2, v1 + v2)) continue;
          out.push_back({m1, m2, v1, v2});
          if (out.size() >= limit) return out;
        }
      }
    }
  }
  return out;
}

Integer factorial(std::size_t d) {
  Integer f = 1;
  for (std::size_t i = 2; i <= d; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

std::vector<VolumeTerm> volume_sequence(const GradedAlgebraModel& model, unsigned M) {
  std::vector<VolumeTerm> out;
  const std::size_t d = model.dimension();
  const Integer df = factorial(d);
  for (unsigned m = 1; m <= M; ++m) {
    const std::size_t rank = model.graded_piece(m).dimension();
    Integer md = 1;
    for (std::size_t i = 0; i < d; ++i) md *= m;
    Scalar v(Integer(df * static_cast<unsigned long>(rank)), md);
    v.canonicalize();
    out.push_back({m, rank, v});
  }
  return out;
}

std::optional<Integer> lattice_index(const std::vector<std::vector<Integer>>& vectors, std::size_t n) {
  // Rows of an upper-triangular integer basis, row c has pivot in column c.
  std::vector<std::optional<std::vector<Integer>>> basis(n);
  for (auto v : vectors) {
    if (v.size() != n) throw ModelError("lattice_index: vector of wrong length");
    for (std::size_t c = 0; c < n; ++c) {
      if (sgn(v[c]) == 0) continue;
      if (!basis[c]) {
        basis[c] = v;
        break;
      }
      auto& row = *basis[c];
      // Extended gcd step: replace (row, v) by (g-row, v with column c cleared).
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
      const Integer a = row[c] / g, b = v[c] / g;
      std::vector<Integer> new_row(n), new_v(n);
      for (std::size_t k = 0; k < n; ++k) {
        new_row[k] = s * row[k] + t * v[k];
        new_v[k] = a * v[k] - b * row[k];
      }
      row = std::move(new_row);
      v = std::move(new_v);
    }
  }
  Integer index = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (!basis[c]) return std::nullopt;
    index *= abs((*basis[c])[c]);
  }
  return index;
}

VolumeIdentityReport check_volume_identity(const GradedAlgebraModel& model, const Flag& flag, unsigned M) {
  if (M == 0) throw ModelError("check_volume_identity needs M >= 1");
  VolumeIdentityReport r;
  r.dimension = model.dimension();
  r.M = M;
  r.flag = flag.to_string();
  const std::size_t d = r.dimension;

  const OkounkovSample sample = collect_semigroup(model, flag, M);

  bool nonnegative = true;
  std::string negative_witness;
  for (const auto& level : sample.levels)
    for (const auto& v : level.points)
      if (nonnegative && std::any_of(v.entries.begin(), v.entries.end(), [](auto x) { return x < 0; })) {
        nonnegative = false;
        negative_witness = "m=" + std::to_string(level.m) + " v=" + v.to_string();
      }
  r.hypotheses.push_back({"nonnegative valuations", nonnegative,
                          nonnegative ? "all sampled vectors lie in N^d" : "negative coordinate at " + negative_witness});

  const auto& level0 = sample.levels.front().points;
  const bool zero_level = level0.size() == 1 && level0.front().is_zero();
  r.hypotheses.push_back({"Gamma_0 = {0}", zero_level, zero_level ? "B_0 = constants" : "level 0 is not {0}"});

  std::vector<std::vector<Integer>> gens;
  for (const auto& level : sample.levels)
    for (const auto& v : level.points) {
      std::vector<Integer> g{Integer(level.m)};
      for (auto x : v.entries) g.emplace_back(static_cast<long>(x));
      gens.push_back(std::move(g));
    }
  const auto index = lattice_index(gens, d + 1);
  const bool generates = index && *index == 1;
  r.hypotheses.push_back({"Gamma generates Z^(d+1)", generates,
                          index ? "lattice index " + index->get_str() : "rank below d+1"});

  const auto box = model.valuation_box(flag);
  const auto pts = normalized_points(sample);
  if (box) {
    std::string escape;
    for (const auto& p : pts) {
      for (std::size_t t = 0; t < d && escape.empty(); ++t)
        if (p[t] < (*box)[t].first || p[t] > (*box)[t].second) {
          escape = "coordinate " + std::to_string(t + 1) + " of a normalized point is " + p[t].get_str();
        }
      if (!escape.empty()) break;
    }
    r.hypotheses.push_back({"bounded normalized points", escape.empty(),
                            escape.empty() ? "all normalized points lie in the instance box" : escape});
  } else {
    r.notes.push_back("no analytic box for this model and flag; boundedness not checked");
  }

  r.body = body_approx(sample);
  r.body_volume = body_volume(r.body);
  const bool full = r.body.affine_dimension() == static_cast<int>(d);
  r.hypotheses.push_back({"full-dimensional body", full,
                          "affine dimension " + std::to_string(r.body.affine_dimension()) + " of " + std::to_string(d)});

  r.normalized_volume = Scalar(factorial(d)) * r.body_volume;
  r.v_M = volume_sequence(model, M).back().value;
  const bool ok = std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const auto& h) { return h.holds; });
  if (ok) {
    r.difference = abs(r.normalized_volume - r.v_M);
  } else {
    r.notes.push_back("a hypothesis of the volume identity fails at this truncation; no comparison is reported");
  }
  r.notes.push_back("volume normalization: v_m = d! * rk B_m / m^d");
  return r;
}

}  // namespace okbody
