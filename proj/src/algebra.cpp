// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/algebra.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "okbody/error.hpp"

namespace okbody {

namespace {

Scalar pow_scalar(const Scalar& base, std::size_t k) {
  Scalar r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= base;
  return r;
}

bool is_positive_integer(const Scalar& q) { return q.get_den() == 1 && sgn(q) > 0; }

std::string point_name(const std::optional<Scalar>& p) { return p ? p->get_str() : "inf"; }

Basis constants_piece(const Variables& vars) {
  return Basis(vars, {}, {Exponent(vars.size(), 0)}, {{{0, Scalar(1)}}});
}

// Basis whose elements are the distinct monomials `exps` over a common shape.
Basis monomial_piece(const Variables& vars, Factorization shape, const std::set<Exponent, GrlexLess>& exps) {
  std::vector<Exponent> support(exps.begin(), exps.end());
  std::vector<Basis::SparseRow> rows;
  rows.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) rows.push_back({{i, Scalar(1)}});
  return Basis(vars, exps.empty() ? Factorization{} : std::move(shape), std::move(support), std::move(rows));
}

Box scale_box(Box box, const Scalar& k) {
  for (auto& [lo, hi] : box) {
    lo *= k;
    hi *= k;
  }
  return box;
}

}  // namespace

// ---------------------------------------------------------------------------
// Divisor data

Scalar TailRule::coefficient(std::size_t i) const {
  switch (kind) {
    case Kind::None:
      return 0;
    case Kind::Geometric:
      return scale * pow_scalar(ratio, i - 1);
    case Kind::InverseSquare:
      return scale / Scalar(static_cast<unsigned long>(i * i));
    case Kind::Harmonic:
      return scale / Scalar(static_cast<unsigned long>(i));
  }
  return 0;
}

std::string TailRule::to_string() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::Geometric:
      return "geometric(" + scale.get_str() + "," + ratio.get_str() + ")";
    case Kind::InverseSquare:
      return "inverse-square(" + scale.get_str() + ")";
    case Kind::Harmonic:
      return "harmonic(" + scale.get_str() + ")";
  }
  return "?";
}

void InfiniteDivisorSpec::validate() const {
  std::set<std::optional<Scalar>> seen;
  for (const auto& s : support) {
    if (!seen.insert(s.point).second) throw ModelError("duplicate support point " + point_name(s.point));
    if (sgn(s.coefficient) <= 0) throw ModelError("support coefficient must be positive at " + point_name(s.point));
  }
  if (tail.kind == TailRule::Kind::None) return;
  if (tail.first_index == 0) throw ModelError("tail index must start at 1 or later");
  if (sgn(tail.scale) <= 0) throw ModelError("tail scale must be positive");
  if (tail.kind == TailRule::Kind::Geometric && (sgn(tail.ratio) <= 0 || tail.ratio >= 1))
    throw ModelError("geometric tail ratio must lie in (0,1)");
}

Scalar InfiniteDivisorSpec::tail_point(std::size_t i) const {
  if (tail.kind == TailRule::Kind::None || i < tail.first_index) throw ModelError("no tail point with this index");
  std::set<Scalar> used;
  for (const auto& s : support)
    if (s.point) used.insert(*s.point);
  std::size_t remaining = i - tail.first_index + 1;
  long n = 0;
  while (remaining > 0) {
    ++n;
    if (!used.count(Scalar(n))) --remaining;
  }
  return Scalar(n);
}

std::vector<std::pair<PrimeDivisor, std::uint64_t>> InfiniteDivisorSpec::floor_multiple(unsigned m) const {
  std::vector<std::pair<PrimeDivisor, std::uint64_t>> out;
  if (m == 0) return out;
  for (const auto& s : support) {
    Integer e = floor_of(s.coefficient * m);
    if (e >= 1) out.emplace_back(s.point ? PrimeDivisor::point(*s.point) : PrimeDivisor::infinity(), e.get_ui());
  }
  if (tail.kind == TailRule::Kind::None) return out;
  std::set<Scalar> used;
  for (const auto& s : support)
    if (s.point) used.insert(*s.point);
  // Coefficients are decreasing, so the first index with floor(m*a_i) = 0 ends the scan.
  long n = 0;
  for (std::size_t i = tail.first_index;; ++i) {
    Integer e = floor_of(tail.coefficient(i) * m);
    if (e < 1) break;
    do ++n;
    while (used.count(Scalar(n)));
    out.emplace_back(PrimeDivisor::point(Scalar(n)), e.get_ui());
  }
  return out;
}

Scalar InfiniteDivisorSpec::coefficient_of(const PrimeDivisor& c) const {
  for (const auto& s : support) {
    if (!s.point && c.kind() == PrimeDivisor::Kind::Infinity) return s.coefficient;
    if (s.point && c.kind() == PrimeDivisor::Kind::Point && c.value() == *s.point) return s.coefficient;
  }
  if (tail.kind == TailRule::Kind::None || c.kind() != PrimeDivisor::Kind::Point || !is_positive_integer(c.value()))
    return 0;
  std::set<Scalar> used;
  for (const auto& s : support)
    if (s.point) used.insert(*s.point);
  const long target = c.value().get_num().get_si();
  std::size_t index = tail.first_index - 1;
  for (long n = 1; n <= target; ++n)
    if (!used.count(Scalar(n))) ++index;
  return tail.coefficient(index);
}

std::optional<Scalar> InfiniteDivisorSpec::degree_bound() const {
  Scalar total = 0;
  for (const auto& s : support) total += s.coefficient;
  const Scalar f(static_cast<unsigned long>(tail.first_index));
  switch (tail.kind) {
    case TailRule::Kind::None:
      return total;
    case TailRule::Kind::Geometric:
      return total + tail.coefficient(tail.first_index) / (1 - tail.ratio);
    case TailRule::Kind::InverseSquare:
      // sum_{i>=f} 1/i^2 <= 1/f^2 + 1/f
      return total + tail.scale * (1 / (f * f) + 1 / f);
    case TailRule::Kind::Harmonic:
      return std::nullopt;
  }
  return std::nullopt;
}

std::size_t InfiniteDivisorSpec::count_at_least(const Scalar& threshold) const {
  if (sgn(threshold) <= 0) throw ModelError("threshold must be positive");
  std::size_t count = 0;
  for (const auto& s : support)
    if (s.coefficient >= threshold) ++count;
  if (tail.kind == TailRule::Kind::None) return count;
  for (std::size_t i = tail.first_index; tail.coefficient(i) >= threshold; ++i) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Model base

GradedAlgebraModel::GradedAlgebraModel(Geometry geometry, unsigned truncation, std::string name)
    : geometry_(std::move(geometry)), truncation_(truncation), name_(std::move(name)) {}

const Basis& GradedAlgebraModel::graded_piece(unsigned m) const {
  if (m > truncation_)
    throw TruncationError("degree " + std::to_string(m) + " exceeds the truncation " + std::to_string(truncation_) +
                          " of model '" + name_ + "'");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return *it->second;
  }
  auto piece = std::make_unique<const Basis>(compute_piece(m));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto [it, inserted] = cache_.try_emplace(m, std::move(piece));
  return *it->second;
}

Flag GradedAlgebraModel::default_flag() const { return Flag::coordinate_origin(dimension()); }

// ---------------------------------------------------------------------------
// Curve section rings

namespace {

class CurveSectionRing final : public GradedAlgebraModel {
 public:
  CurveSectionRing(InfiniteDivisorSpec divisor, unsigned truncation, std::string name)
      : GradedAlgebraModel(Geometry::curve(), truncation, std::move(name)), divisor_(std::move(divisor)) {
    divisor_.validate();
  }

  std::string kind() const override { return "curve"; }

  std::string describe() const override {
    std::ostringstream os;
    os << "curve section ring on P^1, D =";
    bool first = true;
    for (const auto& s : divisor_.support) {
      os << (first ? " " : " + ") << s.coefficient.get_str() << "[" << point_name(s.point) << "]";
      first = false;
    }
    if (divisor_.tail.kind != TailRule::Kind::None)
      os << (first ? " " : " + ") << "tail " << divisor_.tail.to_string() << " from index " << divisor_.tail.first_index;
    return os.str();
  }

  std::optional<Scalar> divisor_bound(const PrimeDivisor& c) const override {
    if (c.kind() == PrimeDivisor::Kind::Hyperplane) return Scalar(0);
    return divisor_.coefficient_of(c);
  }

  std::optional<Box> valuation_box(const Flag& flag) const override {
    const auto* cp = flag.as_curve();
    if (!cp) return std::nullopt;
    auto deg = divisor_.degree_bound();
    if (!deg) return std::nullopt;
    PrimeDivisor c = cp->point ? PrimeDivisor::point(*cp->point) : PrimeDivisor::infinity();
    // -ord_C(f) <= m*a_C, and f has at most deg(floor(mD)) zeros.
    return Box{{-divisor_.coefficient_of(c), *deg}};
  }

  const InfiniteDivisorSpec* curve_divisor() const override { return &divisor_; }

  Flag default_flag() const override {
    if (sgn(divisor_.coefficient_of(PrimeDivisor::point(0))) == 0) return Flag::curve_point(0);
    if (sgn(divisor_.coefficient_of(PrimeDivisor::infinity())) == 0) return Flag::at_infinity();
    for (long q = -1;; --q)
      if (sgn(divisor_.coefficient_of(PrimeDivisor::point(q))) == 0) return Flag::curve_point(q);
  }

 protected:
  Basis compute_piece(unsigned m) const override {
    const Variables& vars = geometry().variables;
    Factorization shape;
    std::uint64_t degree = 0;
    for (const auto& [c, e] : divisor_.floor_multiple(m)) {
      degree += e;
      if (c.kind() == PrimeDivisor::Kind::Infinity) continue;
      Poly linear = Poly::variable(vars, 0) - Poly::constant(vars, c.value());
      shape[linear] += static_cast<std::uint32_t>(e);
    }
    std::set<Exponent, GrlexLess> exps;
    for (std::uint64_t k = 0; k <= degree; ++k) exps.insert(Exponent{static_cast<std::uint32_t>(k)});
    return monomial_piece(vars, std::move(shape), exps);
  }

 private:
  InfiniteDivisorSpec divisor_;
};

// ---------------------------------------------------------------------------
// Laurent monomial algebras

class ParitySlice final : public SliceRule {
 public:
  std::size_t dimension() const override { return 1; }
  std::string name() const override { return "parity"; }
  std::vector<std::vector<long>> points(unsigned m) const override {
    std::vector<std::vector<long>> out;
    const long top = m % 2 == 0 ? static_cast<long>(m) : 0;
    for (long a = 0; a <= top; ++a) out.push_back({a});
    return out;
  }
  std::optional<Box> unit_box() const override { return Box{{Scalar(0), Scalar(1)}}; }
};

class PolytopeSlice final : public SliceRule {
 public:
  explicit PolytopeSlice(std::vector<Point> vertices) {
    if (vertices.empty()) throw ModelError("polytope slice needs at least one vertex");
    const std::size_t dim = vertices.front().size();
    polytope_ = Polytope::hull(dim, std::move(vertices));
  }
  std::size_t dimension() const override { return polytope_.dimension(); }
  std::string name() const override {
    std::string s = "polytope[";
    bool first = true;
    for (const auto& v : polytope_.vertices()) {
      s += first ? "(" : ",(";
      first = false;
      for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "," : "") + v[t].get_str();
      s += ")";
    }
    return s + "]";
  }
  std::vector<std::vector<long>> points(unsigned m) const override { return dilated_lattice_points(polytope_, m); }
  std::optional<Box> unit_box() const override {
    auto [lo, hi] = polytope_.bounding_box();
    Box box;
    for (std::size_t t = 0; t < lo.size(); ++t) box.emplace_back(lo[t], hi[t]);
    return box;
  }

 private:
  Polytope polytope_;
};

class FunctionSlice final : public SliceRule {
 public:
  FunctionSlice(std::string name, std::size_t d, std::function<std::vector<std::vector<long>>(unsigned)> rule)
      : name_(std::move(name)), d_(d), rule_(std::move(rule)) {}
  std::size_t dimension() const override { return d_; }
  std::string name() const override { return name_; }
  std::vector<std::vector<long>> points(unsigned m) const override { return rule_(m); }
  std::optional<Box> unit_box() const override { return std::nullopt; }

 private:
  std::string name_;
  std::size_t d_;
  std::function<std::vector<std::vector<long>>(unsigned)> rule_;
};

class LaurentMonomial final : public GradedAlgebraModel {
 public:
  LaurentMonomial(std::shared_ptr<const SliceRule> slice, unsigned truncation, std::string name)
      : GradedAlgebraModel(Geometry::laurent(slice->dimension()), truncation, std::move(name)),
        slice_(std::move(slice)) {
    if (slice_->dimension() == 0) throw ModelError("slice rule of dimension 0");
  }

  std::string kind() const override { return "monomial"; }
  std::string describe() const override {
    return "Laurent monomial algebra in dimension " + std::to_string(dimension()) + ", slice " + slice_->name();
  }

  std::optional<Scalar> divisor_bound(const PrimeDivisor& c) const override {
    if (c.kind() != PrimeDivisor::Kind::Hyperplane) return Scalar(0);
    auto box = slice_->unit_box();
    if (!box || c.index() >= box->size()) return std::nullopt;
    const Scalar& lo = (*box)[c.index()].first;
    return sgn(lo) < 0 ? Scalar(-lo) : Scalar(0);
  }

  std::optional<Box> valuation_box(const Flag& flag) const override {
    const auto* cf = flag.as_coordinate();
    if (!cf || cf->order.size() != dimension()) return std::nullopt;
    if (std::any_of(cf->center.begin(), cf->center.end(), [](const Scalar& c) { return sgn(c) != 0; }))
      return std::nullopt;
    auto box = slice_->unit_box();
    if (!box) return std::nullopt;
    Box permuted;
    for (auto j : cf->order) permuted.push_back((*box)[j]);
    return permuted;
  }

 protected:
  Basis compute_piece(unsigned m) const override {
    const Variables& vars = geometry().variables;
    const std::size_t d = dimension();
    auto pts = slice_->points(m);
    std::vector<std::uint32_t> shift(d, 0);
    for (const auto& p : pts) {
      if (p.size() != d) throw ModelError("slice rule returned a point of wrong dimension");
      for (std::size_t j = 0; j < d; ++j)
        if (p[j] < 0) shift[j] = std::max(shift[j], static_cast<std::uint32_t>(-p[j]));
    }
    Factorization shape;
    for (std::size_t j = 0; j < d; ++j)
      if (shift[j] > 0) shape[Poly::variable(vars, j)] = shift[j];
    std::set<Exponent, GrlexLess> exps;
    for (const auto& p : pts) {
      Exponent e(d);
      for (std::size_t j = 0; j < d; ++j) e[j] = static_cast<std::uint32_t>(p[j] + static_cast<long>(shift[j]));
      exps.insert(std::move(e));
    }
    return monomial_piece(vars, std::move(shape), exps);
  }

 private:
  std::shared_ptr<const SliceRule> slice_;
};

// ---------------------------------------------------------------------------
// Generated subalgebras and rescaling

class GeneratedSubalgebra final : public GradedAlgebraModel {
 public:
  GeneratedSubalgebra(ModelPtr ambient, std::vector<Generator> generators, unsigned degree_bound, std::string name)
      : GradedAlgebraModel(ambient->geometry(), std::min(ambient->truncation(), degree_bound), std::move(name)),
        ambient_(std::move(ambient)),
        generators_(std::move(generators)) {
    for (const auto& g : generators_) {
      if (g.degree == 0) throw ValidationError("generators must have positive degree");
      if (g.element.is_zero()) continue;
      if (g.element.variables() != geometry().variables)
        throw ValidationError("generator " + g.element.to_string() + " uses variables foreign to the ambient model");
      if (g.degree > ambient_->truncation())
        throw ValidationError("generator degree " + std::to_string(g.degree) + " exceeds the ambient truncation");
      if (!ambient_->graded_piece(g.degree).contains(g.element))
        throw ValidationError("generator " + g.element.to_string() + " does not lie in ambient B_" +
                              std::to_string(g.degree));
    }
  }

  std::string kind() const override { return "generated"; }
  std::string describe() const override {
    std::string s = "subalgebra of '" + ambient_->name() + "' generated by";
    for (const auto& g : generators_) s += " [" + std::to_string(g.degree) + ": " + g.element.to_string() + "]";
    return s;
  }
  std::optional<Scalar> divisor_bound(const PrimeDivisor& c) const override { return ambient_->divisor_bound(c); }
  std::optional<Box> valuation_box(const Flag& flag) const override { return ambient_->valuation_box(flag); }
  const InfiniteDivisorSpec* curve_divisor() const override { return ambient_->curve_divisor(); }
  Flag default_flag() const override { return ambient_->default_flag(); }

 protected:
  Basis compute_piece(unsigned m) const override {
    const Variables& vars = geometry().variables;
    if (m == 0) return constants_piece(vars);
    std::vector<RationalFunction> products;
    for (const auto& g : generators_) {
      if (g.degree > m || g.element.is_zero()) continue;
      for (const auto& b : graded_piece(m - g.degree).elements()) products.push_back(g.element * b);
    }
    Basis piece = echelonize(products, vars);
    // Cap: a piece that fills the ambient piece is the ambient piece.
    const Basis& full = ambient_->graded_piece(m);
    if (piece.dimension() == full.dimension()) return full;
    return piece;
  }

 private:
  ModelPtr ambient_;
  std::vector<Generator> generators_;
};

class Rescale final : public GradedAlgebraModel {
 public:
  Rescale(ModelPtr base, unsigned k)
      : GradedAlgebraModel(base->geometry(), base->truncation() / k, base->name() + "/k" + std::to_string(k)),
        base_(std::move(base)),
        k_(k) {}

  std::string kind() const override { return "rescale"; }
  std::string describe() const override {
    return "degree-" + std::to_string(k_) + " rescaling of '" + base_->name() + "'";
  }
  std::optional<Scalar> divisor_bound(const PrimeDivisor& c) const override {
    auto b = base_->divisor_bound(c);
    if (b) *b *= k_;
    return b;
  }
  std::optional<Box> valuation_box(const Flag& flag) const override {
    auto b = base_->valuation_box(flag);
    if (!b) return b;
    return scale_box(std::move(*b), Scalar(k_));
  }
  Flag default_flag() const override { return base_->default_flag(); }

 protected:
  Basis compute_piece(unsigned m) const override { return base_->graded_piece(k_ * m); }

 private:
  ModelPtr base_;
  unsigned k_;
};

}  // namespace

std::shared_ptr<const SliceRule> parity_slice() { return std::make_shared<ParitySlice>(); }

std::shared_ptr<const SliceRule> polytope_slice(std::vector<Point> vertices) {
  return std::make_shared<PolytopeSlice>(std::move(vertices));
}

std::shared_ptr<const SliceRule> function_slice(std::string name, std::size_t d,
                                                std::function<std::vector<std::vector<long>>(unsigned)> rule) {
  return std::make_shared<FunctionSlice>(std::move(name), d, std::move(rule));
}

ModelPtr curve_section_ring(InfiniteDivisorSpec divisor, unsigned truncation, std::string name) {
  return std::make_shared<CurveSectionRing>(std::move(divisor), truncation, std::move(name));
}

ModelPtr laurent_monomial(std::shared_ptr<const SliceRule> slice, unsigned truncation, std::string name) {
  if (!slice) throw ModelError("missing slice rule");
  return std::make_shared<LaurentMonomial>(std::move(slice), truncation, std::move(name));
}

ModelPtr generated_subalgebra(ModelPtr ambient, std::vector<Generator> generators, unsigned degree_bound,
                              std::string name) {
  if (!ambient) throw ModelError("missing ambient model");
  return std::make_shared<GeneratedSubalgebra>(std::move(ambient), std::move(generators), degree_bound,
                                               std::move(name));
}

ModelPtr subalgebra_rescale(ModelPtr base, unsigned k) {
  if (!base) throw ModelError("missing base model");
  if (k == 0) throw ModelError("rescale factor must be positive");
  return std::make_shared<Rescale>(std::move(base), k);
}

ModelPtr dyadic_curve(const Scalar& ratio, std::vector<Scalar> points, unsigned truncation) {
  InfiniteDivisorSpec spec;
  for (std::size_t i = 0; i < points.size(); ++i) spec.support.push_back({points[i], pow_scalar(ratio, i + 1)});
  spec.tail = {TailRule::Kind::Geometric, ratio, ratio, points.size() + 1};
  return curve_section_ring(std::move(spec), truncation, ratio == Scalar(1, 2) ? "dyadic" : "geometric");
}

ModelPtr big_line_bundle_curve(unsigned degree, unsigned truncation) {
  if (degree == 0) throw ModelError("line bundle degree must be positive");
  InfiniteDivisorSpec spec;
  spec.support.push_back({Scalar(0), Scalar(degree)});
  return curve_section_ring(std::move(spec), truncation, "line");
}

ModelPtr polytope_monomial(std::vector<Point> vertices, unsigned truncation) {
  return laurent_monomial(polytope_slice(std::move(vertices)), truncation, "polytope");
}

ModelPtr parity_monomial(unsigned truncation) { return laurent_monomial(parity_slice(), truncation, "parity"); }

ModelPtr generated(ModelPtr ambient, std::vector<Generator> generators, unsigned degree_bound) {
  return generated_subalgebra(std::move(ambient), std::move(generators), degree_bound);
}

ModelPtr tail_family(const std::string& name, std::vector<Scalar> parameters, bool require_convergent,
                     unsigned truncation) {
  InfiniteDivisorSpec spec;
  if (name == "geometric") {
    if (parameters.size() != 2) throw ModelError("geometric tail takes (scale, ratio)");
    spec.tail = {TailRule::Kind::Geometric, parameters[0], parameters[1], 1};
  } else if (name == "inverse-square" || name == "harmonic-squares") {
    if (parameters.size() != 1) throw ModelError(name + " tail takes (c)");
    spec.tail = {TailRule::Kind::InverseSquare, parameters[0], 0, 1};
  } else if (name == "harmonic") {
    if (parameters.size() != 1) throw ModelError("harmonic tail takes (c)");
    spec.tail = {TailRule::Kind::Harmonic, parameters[0], 0, 1};
  } else {
    throw ModelError("unknown tail family '" + name + "'");
  }
  if (require_convergent && !spec.tail.summable())
    throw ModelError("tail family '" + name + "' is not summable, so its divisor class does not converge");
  return curve_section_ring(std::move(spec), truncation, name);
}

// ---------------------------------------------------------------------------
// Powers

Basis power_image(const GradedAlgebraModel& model, unsigned p, unsigned n) {
  if (p == 0 || n == 0) throw ModelError("power_image needs positive p and n");
  if (static_cast<unsigned long>(p) * n > model.truncation())
    throw TruncationError("power S^" + std::to_string(n) + "(B_" + std::to_string(p) + ") lands beyond the truncation");
  const Basis& piece = model.graded_piece(p);
  if (piece.empty()) return piece;
  if (n == 1) return piece;
  std::optional<Basis> result;
  Basis square = piece;
  for (unsigned k = n;;) {
    if (k & 1u) result = result ? product_space(*result, square) : square;
    k >>= 1;
    if (k == 0) break;
    square = product_space(square, square);
  }
  return *result;
}

std::vector<Basis> power_chain(const GradedAlgebraModel& model, unsigned p, unsigned n) {
  if (p == 0 || n == 0) throw ModelError("power_chain needs positive p and n");
  if (static_cast<unsigned long>(p) * n > model.truncation())
    throw TruncationError("power chain lands beyond the truncation");
  std::vector<Basis> out;
  const Basis& piece = model.graded_piece(p);
  out.push_back(piece);
  for (unsigned k = 2; k <= n; ++k) out.push_back(product_space(out.back(), piece));
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  os << "validation: " << (passed ? "pass" : "FAIL") << "\n";
  os << "first nonempty degree: " << (first_nonempty ? std::to_string(*first_nonempty) : "none") << "\n";
  for (const auto& c : checks) os << "check: " << c << "\n";
  for (const auto& f : failures) os << "failure: " << f.check << " at " << f.degrees << ": " << f.witness << "\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

namespace {

RationalFunction random_element(const Basis& b, std::mt19937_64& rng) {
  RationalFunction f = RationalFunction::constant(b.variables(), 0);
  for (const auto& e : b.elements()) {
    long c = static_cast<long>(rng() % 7) - 3;
    if (c != 0) f = f + e * Scalar(c);
  }
  if (f.is_zero()) f = b.elements().front();
  return f;
}

}  // namespace

ValidationReport validate_model(const GradedAlgebraModel& model, unsigned samples, std::uint64_t seed,
                                unsigned max_degree) {
  ValidationReport r;
  const unsigned top = std::min(max_degree, model.truncation());
  auto fail = [&](std::string check, std::string degrees, std::string witness) {
    r.passed = false;
    r.failures.push_back({std::move(check), std::move(degrees), std::move(witness)});
  };

  try {
    const Basis& b0 = model.graded_piece(0);
    const auto one = RationalFunction::constant(model.geometry().variables, 1);
    if (b0.dimension() != 1 || !b0.contains(one))
      fail("B_0 = constants", "m=0", "dim B_0 = " + std::to_string(b0.dimension()));
    r.checks.push_back("B_0 = constants");
  } catch (const std::exception& e) {
    fail("B_0 = constants", "m=0", e.what());
  }

  try {
    std::optional<unsigned> last_zero;
    for (unsigned m = 1; m <= top; ++m) {
      if (model.graded_piece(m).empty()) {
        last_zero = m;
      } else if (!r.first_nonempty) {
        r.first_nonempty = m;
      }
    }
    r.nonempty_from = last_zero ? *last_zero + 1 : 1;
    r.checks.push_back("nonempty B_m for m in [1," + std::to_string(top) + "]");
    if (!r.first_nonempty || r.nonempty_from > top)
      fail("nonempty", "m<=" + std::to_string(top), "no nonzero graded piece at the top of the range");
  } catch (const std::exception& e) {
    fail("nonempty", "m<=" + std::to_string(top), e.what());
  }

  std::mt19937_64 rng(seed);
  unsigned tested = 0;
  for (unsigned s = 0; s < samples && top > 0; ++s) {
    const unsigned m1 = static_cast<unsigned>(rng() % (top + 1));
    const unsigned m2 = static_cast<unsigned>(rng() % (top - m1 + 1));
    const std::string degrees = "m1=" + std::to_string(m1) + ",m2=" + std::to_string(m2);
    try {
      const Basis& a = model.graded_piece(m1);
      const Basis& b = model.graded_piece(m2);
      if (a.empty() || b.empty()) continue;
      RationalFunction f = random_element(a, rng);
      RationalFunction g = random_element(b, rng);
      RationalFunction fg = f * g;
      ++tested;
      if (!model.graded_piece(m1 + m2).contains(fg))
        fail("multiplicative closure", degrees, f.to_string() + " * " + g.to_string() + " not in B_" + std::to_string(m1 + m2));
    } catch (const std::exception& e) {
      fail("multiplicative closure", degrees, e.what());
    }
  }
  r.checks.push_back("multiplicative closure on " + std::to_string(tested) + " sampled pairs");
  r.notes.push_back("'non-empty' is read as B_m != {0}; under this reading B_m containing only constants counts as non-empty");
  return r;
}

}  // namespace okbody
