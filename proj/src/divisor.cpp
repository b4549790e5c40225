// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/divisor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "okbody/error.hpp"

namespace okbody {

FiniteDivisor::FiniteDivisor(Map coefficients) {
  for (auto& [c, v] : coefficients)
    if (v != 0) coefficients_.emplace(c, v);
}

std::int64_t FiniteDivisor::coefficient(const PrimeDivisor& c) const {
  auto it = coefficients_.find(c);
  return it == coefficients_.end() ? 0 : it->second;
}

void FiniteDivisor::set(const PrimeDivisor& c, std::int64_t value) {
  if (value == 0) {
    coefficients_.erase(c);
  } else {
    coefficients_[c] = value;
  }
}

std::string FiniteDivisor::to_string(const Geometry* geometry) const {
  std::string s = "{";
  bool first = true;
  for (const auto& [c, v] : coefficients_) {
    s += (first ? "" : ", ") + c.to_string(geometry) + ": " + std::to_string(v);
    first = false;
  }
  return s + "}";
}

FiniteDivisor pole_divisor(const RationalFunction& f, const Geometry& geometry) {
  if (f.is_zero()) throw UndefinedValuation("the zero element has no divisor");
  if (f.variables() != geometry.variables) throw ModelError("element variables do not match the geometry");
  const Poly& num = f.numerator();
  FiniteDivisor out;

  if (geometry.kind == Geometry::Kind::Curve) {
    std::int64_t den_degree = 0;
    for (const auto& [factor, mult] : f.factors()) {
      if (factor.total_degree() != 1)
        throw ModelError("denominator factor " + factor.to_string() + " is not a rational point of the line");
      den_degree += mult;
      const Scalar point = -factor.coefficient(Exponent{0});
      const std::int64_t ord = static_cast<std::int64_t>(root_multiplicity(num, point)) - mult;
      if (ord < 0) out.set(PrimeDivisor::point(point), -ord);
    }
    const std::int64_t ord_inf = den_degree - static_cast<std::int64_t>(num.total_degree());
    if (ord_inf < 0) out.set(PrimeDivisor::infinity(), -ord_inf);
    return out;
  }

  const std::size_t d = geometry.variables.size();
  std::vector<std::int64_t> den(d, 0);
  for (const auto& [factor, mult] : f.factors()) {
    std::size_t j = d;
    for (std::size_t t = 0; t < d; ++t)
      if (factor == Poly::variable(geometry.variables, t)) j = t;
    if (j == d) throw ModelError("denominator factor " + factor.to_string() + " is not a coordinate hyperplane");
    den[j] += mult;
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::int64_t low = -1;
    for (const auto& [e, c] : num.terms())
      if (low < 0 || e[j] < low) low = e[j];
    const std::int64_t ord = low - den[j];
    if (ord < 0) out.set(PrimeDivisor::hyperplane(j), -ord);
  }
  return out;
}

FiniteDivisor pole_supremum(std::span<const RationalFunction> elements, const Geometry& geometry) {
  FiniteDivisor out;
  for (const auto& f : elements) {
    if (f.is_zero()) continue;
    const FiniteDivisor poles = pole_divisor(f, geometry);
    for (const auto& [c, v] : poles.coefficients())
      if (v > out.coefficient(c)) out.set(c, v);
  }
  return out;
}

FiniteDivisor compute_Dm(const GradedAlgebraModel& model, unsigned m) {
  const Basis& piece = model.graded_piece(m);
  if (piece.empty()) throw ModelError("D_" + std::to_string(m) + " is undefined: B_" + std::to_string(m) + " = 0");
  return pole_supremum(piece.elements(), model.geometry());
}

const DivisorRecord* DivisorEstimate::find(const PrimeDivisor& c) const {
  for (const auto& r : records)
    if (r.id == c) return &r;
  return nullptr;
}

std::map<PrimeDivisor, Scalar> DivisorEstimate::sup_divisor() const {
  std::map<PrimeDivisor, Scalar> out;
  for (const auto& r : records) out.emplace(r.id, r.sup);
  return out;
}

DivisorEstimate divisor_limit_estimate(const GradedAlgebraModel& model, unsigned M) {
  if (M == 0) throw ModelError("divisor_limit_estimate needs M >= 1");
  DivisorEstimate est;
  est.M = M;
  std::set<PrimeDivisor> ids;
  for (unsigned m = 1; m <= M; ++m) {
    if (model.graded_piece(m).empty()) {
      est.zero_pieces.push_back(m);
      est.D.emplace_back();
      continue;
    }
    est.D.push_back(compute_Dm(model, m));
    for (const auto& [c, v] : est.D.back().coefficients()) ids.insert(c);
  }
  for (const auto& c : ids) {
    DivisorRecord r;
    r.id = c;
    r.sup = 0;
    for (unsigned m = 1; m <= M; ++m) {
      const Scalar q = fraction(est.D[m - 1].coefficient(c), m);
      if (q > r.sup) {
        r.sup = q;
        r.argmax = m;
      }
      r.sequence.push_back(q);
      if (M % m == 0) {
        r.divisors.push_back(m);
        r.divisor_values.push_back(q);
      }
    }
    est.records.push_back(std::move(r));
  }
  return est;
}

std::vector<std::pair<unsigned, unsigned>> divisibility_pairs(unsigned max_degree) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned m2 = 1; m2 <= max_degree; ++m2)
    for (unsigned m1 = 1; m1 < m2; ++m1)
      if (m2 % m1 == 0) out.emplace_back(m1, m2);
  return out;
}

namespace {

// First prime divisor where D1/m1 <= D2/m2 fails, if any.
std::optional<PrimeDivisor> first_excess(const FiniteDivisor& d1, unsigned m1, const FiniteDivisor& d2, unsigned m2) {
  for (const auto& [c, v] : d1.coefficients())
    if (fraction(v, m1) > fraction(d2.coefficient(c), m2)) return c;
  return std::nullopt;
}

}  // namespace

MonotonicityReport check_monotonicity(const GradedAlgebraModel& model,
                                      const std::vector<std::pair<unsigned, unsigned>>& chains,
                                      bool observe_incomparable) {
  MonotonicityReport rep;
  std::map<unsigned, std::optional<FiniteDivisor>> cache;
  auto D = [&](unsigned m) -> const std::optional<FiniteDivisor>& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::optional<FiniteDivisor> d;
    if (!model.graded_piece(m).empty()) d = compute_Dm(model, m);
    return cache.emplace(m, std::move(d)).first->second;
  };
  const Geometry& g = model.geometry();

  for (auto [m1, m2] : chains) {
    MonotonicityCheck c{m1, m2, true, ""};
    if (m1 == 0 || m2 % m1 != 0) {
      c.holds = false;
      c.detail = "not a divisibility pair";
    } else if (!D(m1) || !D(m2)) {
      c.detail = "skipped: a graded piece is zero";
    } else if (auto bad = first_excess(*D(m1), m1, *D(m2), m2)) {
      c.holds = false;
      std::ostringstream os;
      os << "coefficient at " << bad->to_string(&g) << ": " << D(m1)->coefficient(*bad) << "/" << m1 << " > "
         << D(m2)->coefficient(*bad) << "/" << m2;
      c.detail = os.str();
    } else {
      c.detail = "D_" + std::to_string(m1) + "/" + std::to_string(m1) + " <= D_" + std::to_string(m2) + "/" +
                 std::to_string(m2);
    }
    if (!c.holds) rep.passed = false;
    rep.checks.push_back(std::move(c));
  }

  if (observe_incomparable) {
    std::set<unsigned> degrees;
    for (auto [m1, m2] : chains) {
      degrees.insert(m1);
      degrees.insert(m2);
    }
    for (unsigned m1 : degrees) {
      for (unsigned m2 : degrees) {
        if (m1 == 0 || m1 >= m2 || m2 % m1 == 0) continue;
        if (!D(m1) || !D(m2)) continue;
        if (auto bad = first_excess(*D(m1), m1, *D(m2), m2)) {
          std::ostringstream os;
          os << "coefficient at " << bad->to_string(&g) << ": " << D(m1)->coefficient(*bad) << "/" << m1 << " > "
             << D(m2)->coefficient(*bad) << "/" << m2;
          rep.incomparable_observations.push_back({m1, m2, false, os.str()});
        }
      }
    }
  }
  return rep;
}

InclusionReport check_inclusion(const GradedAlgebraModel& model, const DivisorEstimate& estimate, unsigned M) {
  InclusionReport rep;
  rep.M = M;
  rep.estimate_M = estimate.M;
  if (estimate.M < M)
    rep.notes.push_back("estimate truncation " + std::to_string(estimate.M) + " is below the checked range " +
                        std::to_string(M) + "; failures may witness the truncation");
  const auto dhat = estimate.sup_divisor();
  const Geometry& g = model.geometry();
  auto allowed = [&](const PrimeDivisor& c, unsigned m) -> std::int64_t {
    auto it = dhat.find(c);
    if (it == dhat.end()) return 0;
    return floor_of(it->second * m).get_si();
  };

  for (unsigned m = 1; m <= M; ++m) {
    const Basis& piece = model.graded_piece(m);
    if (piece.empty()) continue;
    std::set<PrimeDivisor> reported;
    for (const auto& b : piece.elements()) {
      const FiniteDivisor poles = pole_divisor(b, g);
      for (const auto& [c, v] : poles.coefficients()) {
        const std::int64_t a = allowed(c, m);
        if (v <= a || reported.count(c)) continue;
        reported.insert(c);
        std::ostringstream os;
        os << "element with pole order " << v << " at " << c.to_string(&g) << " but floor(" << m << "*Dhat) = " << a;
        rep.failures.push_back({m, c, "div(b)+floor(mD)>=0", os.str()});
      }
    }
    const FiniteDivisor dm = pole_supremum(piece.elements(), g);
    for (const auto& [c, v] : dm.coefficients()) {
      const std::int64_t a = allowed(c, m);
      if (v <= a) continue;
      std::ostringstream os;
      os << "coeff(D_" << m << ") = " << v << " > floor(" << m << "*Dhat) = " << a;
      rep.failures.push_back({m, c, "D_m<=floor(mD)", os.str()});
    }
  }
  rep.passed = rep.failures.empty();
  return rep;
}

DecayReport coefficient_decay(const DivisorEstimate& estimate, const GradedAlgebraModel* model) {
  DecayReport rep;
  for (const auto& r : estimate.records) rep.coefficients.emplace_back(r.id, r.sup);
  std::stable_sort(rep.coefficients.begin(), rep.coefficients.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (unsigned l = 1; l <= 10; ++l) {
    const Scalar threshold(1, l);
    std::size_t n = 0;
    for (const auto& [c, v] : rep.coefficients)
      if (v >= threshold) ++n;
    rep.counts.emplace_back(l, n);
  }
  const InfiniteDivisorSpec* spec = model ? model->curve_divisor() : nullptr;
  if (spec) {
    for (unsigned l = 1; l <= 10; ++l) rep.analytic.emplace_back(l, spec->count_at_least(Scalar(1, l)));
    std::string note = "analytic counts from the divisor rule (tail " + spec->tail.to_string() + ") are finite for every l";
    if (model->kind() == "generated") note += "; for a subalgebra they bound the counts of its limit divisor";
    rep.notes.push_back(note);
  } else {
    rep.notes.push_back("no certified coefficient rule for this model; counts are from the estimate only");
  }
  return rep;
}

BoundednessReport check_divisor_bounds(const GradedAlgebraModel& model, const DivisorEstimate& estimate) {
  BoundednessReport rep;
  const Geometry& g = model.geometry();
  for (const auto& r : estimate.records) {
    auto bound = model.divisor_bound(r.id);
    std::ostringstream os;
    os << r.id.to_string(&g) << ": sup " << r.sup.get_str();
    if (!bound) {
      os << ", no analytic bound";
    } else if (r.sup > *bound) {
      rep.passed = false;
      os << " exceeds the bound " << bound->get_str();
    } else {
      os << " <= " << bound->get_str();
    }
    rep.lines.push_back(os.str());
  }
  return rep;
}

}  // namespace okbody
