// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Pole divisors, the divisors D_m, and the truncated limit divisor.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "okbody/algebra.hpp"
#include "okbody/geometry.hpp"

namespace okbody {

class FiniteDivisor {
 public:
  using Map = std::map<PrimeDivisor, std::int64_t>;

  FiniteDivisor() = default;
  explicit FiniteDivisor(Map coefficients);

  const Map& coefficients() const { return coefficients_; }
  std::int64_t coefficient(const PrimeDivisor& c) const;
  /// Sets a coefficient; zero removes the entry.
  void set(const PrimeDivisor& c, std::int64_t value);
  bool empty() const { return coefficients_.empty(); }

  bool operator==(const FiniteDivisor&) const = default;
  /// "{[0]: 2, [inf]: 1}".
  std::string to_string(const Geometry* geometry = nullptr) const;

 private:
  Map coefficients_;
};

/// Negative part of div(f). Throws UndefinedValuation for f = 0 and
/// ModelError for denominator factors that are not prime divisors of the geometry.
FiniteDivisor pole_divisor(const RationalFunction& f, const Geometry& geometry);

/// Coefficientwise maximum of the pole divisors of `elements` (zeros skipped).
FiniteDivisor pole_supremum(std::span<const RationalFunction> elements, const Geometry& geometry);

/// D_m; throws ModelError when B_m = 0.
FiniteDivisor compute_Dm(const GradedAlgebraModel& model, unsigned m);

struct DivisorRecord {
  PrimeDivisor id = PrimeDivisor::infinity();
  Scalar sup;
  unsigned argmax = 0;                 // smallest m attaining sup
  std::vector<Scalar> sequence;        // coeff(D_m)/m for m = 1..M
  std::vector<unsigned> divisors;      // m | M
  std::vector<Scalar> divisor_values;  // coeff(D_m)/m along m | M
};

struct DivisorEstimate {
  unsigned M = 0;
  std::vector<FiniteDivisor> D;        // D_1..D_M (zero divisor where B_m = 0)
  std::vector<unsigned> zero_pieces;   // m with B_m = 0
  std::vector<DivisorRecord> records;  // ordered by id

  const DivisorRecord* find(const PrimeDivisor& c) const;
  /// The sup divisor, as exact rationals.
  std::map<PrimeDivisor, Scalar> sup_divisor() const;
};

DivisorEstimate divisor_limit_estimate(const GradedAlgebraModel& model, unsigned M);

struct MonotonicityCheck {
  unsigned m1 = 0, m2 = 0;
  bool holds = true;
  std::string detail;
};

struct MonotonicityReport {
  bool passed = true;
  std::vector<MonotonicityCheck> checks;
  /// Pairs m1 < m2 with m1 not dividing m2 where D_{m1}/m1 <= D_{m2}/m2 fails; data only.
  std::vector<MonotonicityCheck> incomparable_observations;
};

/// All (m1, m2) with m1 < m2 <= max_degree and m1 | m2.
std::vector<std::pair<unsigned, unsigned>> divisibility_pairs(unsigned max_degree);

MonotonicityReport check_monotonicity(const GradedAlgebraModel& model,
                                      const std::vector<std::pair<unsigned, unsigned>>& chains,
                                      bool observe_incomparable = true);

struct InclusionFailure {
  unsigned m = 0;
  PrimeDivisor id = PrimeDivisor::infinity();
  std::string check;  // "div(b)+floor(mD)>=0" or "D_m<=floor(mD)"
  std::string detail;
};

struct InclusionReport {
  unsigned M = 0;
  unsigned estimate_M = 0;
  bool passed = true;
  std::vector<InclusionFailure> failures;
  std::vector<std::string> notes;
};

/// Checks div(b) + floor(m*Dhat) >= 0 for every echelon element b of B_m and
/// D_m <= floor(m*Dhat), for 1 <= m <= M, where Dhat is the estimate's sup divisor.
InclusionReport check_inclusion(const GradedAlgebraModel& model, const DivisorEstimate& estimate, unsigned M);

struct DecayReport {
  std::vector<std::pair<PrimeDivisor, Scalar>> coefficients;  // descending
  std::vector<std::pair<unsigned, std::size_t>> counts;       // (l, #coefficients >= 1/l), l = 1..10
  std::vector<std::pair<unsigned, std::size_t>> analytic;     // same from the divisor rule, when certified
  std::vector<std::string> notes;
};

DecayReport coefficient_decay(const DivisorEstimate& estimate, const GradedAlgebraModel* model = nullptr);

struct BoundednessReport {
  bool passed = true;
  std::vector<std::string> lines;
};

/// Every sup coefficient is at most the model's analytic bound.
BoundednessReport check_divisor_bounds(const GradedAlgebraModel& model, const DivisorEstimate& estimate);

}  // namespace okbody
