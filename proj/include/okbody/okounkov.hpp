// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Okounkov semigroups, inner body approximations, and the volume identity.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "okbody/algebra.hpp"
#include "okbody/polytope.hpp"
#include "okbody/valuation.hpp"

namespace okbody {

struct SemigroupLevel {
  unsigned m = 0;
  std::size_t piece_dimension = 0;
  std::vector<ValuationVector> points;  // sorted
};

/// Gamma truncated at degree M: levels 0..M.
struct OkounkovSample {
  unsigned M = 0;
  std::size_t dimension = 0;
  Flag flag = Flag::at_infinity();
  std::vector<SemigroupLevel> levels;

  bool contains(unsigned m, const ValuationVector& v) const;
  std::size_t size() const;
};

OkounkovSample collect_semigroup(const GradedAlgebraModel& model, const Flag& flag, unsigned M);

/// The points v/m for (m, v) in the sample with m >= 1.
std::vector<Point> normalized_points(const OkounkovSample& sample);

/// Convex hull of the normalized points. Throws UnsupportedDimension for d > 3.
Polytope body_approx(const OkounkovSample& sample);
Scalar body_volume(const Polytope& p);

/// (m1, v1, m2, v2) with m1 + m2 <= M whose sum is missing from the sample.
struct ClosureViolation {
  unsigned m1, m2;
  ValuationVector v1, v2;
};
std::vector<ClosureViolation> check_semigroup_closure(const OkounkovSample& sample, std::size_t limit = 16);

/// d! * rk B_m / m^d.
struct VolumeTerm {
  unsigned m = 0;
  std::size_t rank = 0;
  Scalar value;
};
std::vector<VolumeTerm> volume_sequence(const GradedAlgebraModel& model, unsigned M);

/// Index of the subgroup of Z^n generated by `vectors`; empty if the rank is below n.
std::optional<Integer> lattice_index(const std::vector<std::vector<Integer>>& vectors, std::size_t n);

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct VolumeIdentityReport {
  std::size_t dimension = 0;
  unsigned M = 0;
  std::string flag;
  Polytope body;
  Scalar body_volume;
  Scalar normalized_volume;  // d! * vol(body)
  Scalar v_M;
  /// |d! vol(body) - v_M|; empty when a hypothesis fails.
  std::optional<Scalar> difference;
  std::vector<HypothesisCheck> hypotheses;
  std::vector<std::string> notes;
};

VolumeIdentityReport check_volume_identity(const GradedAlgebraModel& model, const Flag& flag, unsigned M);

Integer factorial(std::size_t d);

}  // namespace okbody
