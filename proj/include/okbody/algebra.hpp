// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Computable graded algebras B = (+)_m B_m and the shipped instance library.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "okbody/geometry.hpp"
#include "okbody/kernel.hpp"
#include "okbody/polytope.hpp"
#include "okbody/valuation.hpp"

namespace okbody {

// ---------------------------------------------------------------------------
// Infinite divisors on the projective line

struct SupportPoint {
  std::optional<Scalar> point;  // empty = infinity
  Scalar coefficient;
};

/// Decreasing coefficient rule a_i for i >= first_index, placed on the
/// positive integers not used by the explicit support, in increasing order.
struct TailRule {
  enum class Kind { None, Geometric, InverseSquare, Harmonic };
  Kind kind = Kind::None;
  Scalar scale = 0;
  Scalar ratio = 0;  // geometric only
  std::size_t first_index = 1;

  /// a_i: scale*ratio^(i-1), scale/i^2 or scale/i.
  Scalar coefficient(std::size_t i) const;
  bool summable() const { return kind != Kind::Harmonic; }
  std::string to_string() const;
};

struct InfiniteDivisorSpec {
  std::vector<SupportPoint> support;
  TailRule tail;

  /// Throws ModelError on duplicate points, non-positive coefficients or a bad tail.
  void validate() const;
  /// (point, floor(m*a)) for every prime with floor(m*a) >= 1; finite by the tail certificate.
  std::vector<std::pair<PrimeDivisor, std::uint64_t>> floor_multiple(unsigned m) const;
  /// Coefficient of a prime divisor in D (0 if absent).
  Scalar coefficient_of(const PrimeDivisor& c) const;
  /// Upper bound for deg D (exact for finite and geometric tails); empty if divergent.
  std::optional<Scalar> degree_bound() const;
  /// Number of primes with coefficient >= threshold (exact, finite for summable or harmonic tails).
  std::size_t count_at_least(const Scalar& threshold) const;
  /// The i-th tail point (i >= first_index).
  Scalar tail_point(std::size_t i) const;
};

// ---------------------------------------------------------------------------
// Models

class GradedAlgebraModel;
using ModelPtr = std::shared_ptr<const GradedAlgebraModel>;

/// Per-coordinate closed interval [lo, hi].
using Box = std::vector<std::pair<Scalar, Scalar>>;

class GradedAlgebraModel {
 public:
  GradedAlgebraModel(Geometry geometry, unsigned truncation, std::string name);
  virtual ~GradedAlgebraModel() = default;
  GradedAlgebraModel(const GradedAlgebraModel&) = delete;
  GradedAlgebraModel& operator=(const GradedAlgebraModel&) = delete;

  /// Basis of B_m. Throws TruncationError beyond the truncation hint.
  const Basis& graded_piece(unsigned m) const;

  const Geometry& geometry() const { return geometry_; }
  std::size_t dimension() const { return geometry_.dimension(); }
  unsigned truncation() const { return truncation_; }
  const std::string& name() const { return name_; }

  virtual std::string kind() const = 0;
  virtual std::string describe() const = 0;
  /// Instance-derived bound on coeff(C, D_m)/m, when one is known.
  virtual std::optional<Scalar> divisor_bound(const PrimeDivisor& c) const = 0;
  /// Instance-derived box containing nu(B_m)/m for all m, when one is known.
  virtual std::optional<Box> valuation_box(const Flag& flag) const = 0;
  /// Curve divisor data when the model is (a subalgebra of) a curve section ring.
  virtual const InfiniteDivisorSpec* curve_divisor() const { return nullptr; }
  virtual Flag default_flag() const;

 protected:
  virtual Basis compute_piece(unsigned m) const = 0;

 private:
  Geometry geometry_;
  unsigned truncation_;
  std::string name_;
  mutable std::mutex cache_mutex_;
  mutable std::map<unsigned, std::unique_ptr<const Basis>> cache_;
};

/// Lattice-point slice rule S_m for Laurent monomial algebras.
class SliceRule {
 public:
  virtual ~SliceRule() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::string name() const = 0;
  virtual std::vector<std::vector<long>> points(unsigned m) const = 0;
  /// Box containing S_m/m for all m >= 1, if known.
  virtual std::optional<Box> unit_box() const = 0;
};

/// S_m = {0..m} for even m, {0} for odd m.
std::shared_ptr<const SliceRule> parity_slice();
/// S_m = lattice points of m*P.
std::shared_ptr<const SliceRule> polytope_slice(std::vector<Point> vertices);
/// Arbitrary rule, for experiments and tests.
std::shared_ptr<const SliceRule> function_slice(std::string name, std::size_t d,
                                                std::function<std::vector<std::vector<long>>(unsigned)> rule);

struct Generator {
  unsigned degree;
  RationalFunction element;
};

ModelPtr curve_section_ring(InfiniteDivisorSpec divisor, unsigned truncation, std::string name = "curve");
ModelPtr laurent_monomial(std::shared_ptr<const SliceRule> slice, unsigned truncation, std::string name = "monomial");
/// Throws ValidationError if a generator does not lie in the ambient piece of its degree.
ModelPtr generated_subalgebra(ModelPtr ambient, std::vector<Generator> generators, unsigned degree_bound,
                              std::string name = "generated");
/// The algebra (+)_n B_{nk}.
ModelPtr subalgebra_rescale(ModelPtr base, unsigned k);

// Instance constructors.
ModelPtr dyadic_curve(const Scalar& ratio, std::vector<Scalar> points, unsigned truncation = 512);
ModelPtr big_line_bundle_curve(unsigned degree, unsigned truncation = 512);
ModelPtr polytope_monomial(std::vector<Point> vertices, unsigned truncation = 128);
ModelPtr parity_monomial(unsigned truncation = 512);
ModelPtr generated(ModelPtr ambient, std::vector<Generator> generators, unsigned degree_bound = 64);
/// Named coefficient-tail families on the line: "geometric" (scale, ratio),
/// "inverse-square" (c: a_i = c/i^2), "harmonic" (c: a_i = c/i). Non-summable
/// tails are rejected unless `require_convergent` is false.
ModelPtr tail_family(const std::string& name, std::vector<Scalar> parameters, bool require_convergent = true,
                     unsigned truncation = 256);

/// S^n(B_p) by binary exponentiation with intermediate echelonization.
Basis power_image(const GradedAlgebraModel& model, unsigned p, unsigned n);
/// S^1(B_p), ..., S^n(B_p) by the linear chain S^{k+1} = S^k * B_p.
std::vector<Basis> power_chain(const GradedAlgebraModel& model, unsigned p, unsigned n);

// ---------------------------------------------------------------------------
// Validation

struct ValidationFailure {
  std::string check;
  std::string degrees;
  std::string witness;
};

struct ValidationReport {
  bool passed = true;
  std::optional<unsigned> first_nonempty;  // first m >= 1 with B_m != 0
  unsigned nonempty_from = 0;               // B_m != 0 for all m in [nonempty_from, range end]
  std::vector<std::string> checks;
  std::vector<ValidationFailure> failures;
  std::vector<std::string> notes;

  std::string to_string() const;
};

/// Checks B_0 = constants, closure on `samples` random degree pairs
/// (m1 + m2 <= max_degree), and nonemptiness of B_1..B_max_degree. Never throws.
ValidationReport validate_model(const GradedAlgebraModel& model, unsigned samples, std::uint64_t seed = 1,
                                unsigned max_degree = 12);

}  // namespace okbody
