// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/valuation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "okbody/error.hpp"

namespace okbody {

namespace {

// Polynomial in flag-local coordinates, keyed by exponent in flag order;
// std::less on vectors is lexicographic, so begin() is the lex-minimal term.
using LocalForm = std::map<Exponent, Scalar>;

void require_applicable(const Variables& vars, const Flag& flag) {
  if (const auto* c = flag.as_curve()) {
    if (vars.size() != 1) throw FlagInapplicable("curve-point flag applied to a " + std::to_string(vars.size()) + "-variable element");
    (void)c;
    return;
  }
  const auto& cf = *flag.as_coordinate();
  if (cf.order.size() != vars.size())
    throw FlagInapplicable("coordinate flag of dimension " + std::to_string(cf.order.size()) +
                           " applied to a " + std::to_string(vars.size()) + "-variable element");
}

// `degree_bound` only matters at infinity, where x^k is sent to t^(bound-k).
LocalForm localize(const Poly& p, const Flag& flag, std::uint32_t degree_bound) {
  LocalForm out;
  if (const auto* c = flag.as_curve()) {
    if (!c->point) {
      for (const auto& [e, v] : p.terms()) out.emplace(Exponent{degree_bound - e[0]}, v);
      return out;
    }
    Scalar shift[1] = {*c->point};
    const Poly moved = p.translated(shift);
    for (const auto& [e, v] : moved.terms()) out.emplace(e, v);
    return out;
  }
  const auto& cf = *flag.as_coordinate();
  Poly moved = p.translated(cf.center);
  Exponent permuted(cf.order.size());
  for (const auto& [e, v] : moved.terms()) {
    for (std::size_t i = 0; i < cf.order.size(); ++i) permuted[i] = e[cf.order[i]];
    out.emplace(permuted, v);
  }
  return out;
}

ValuationVector poly_valuation(const Poly& p, const Flag& flag) {
  if (p.is_zero()) throw UndefinedValuation("valuation of zero");
  if (const auto* c = flag.as_curve()) {
    if (!c->point) return {{-static_cast<std::int64_t>(p.total_degree())}};
    return {{static_cast<std::int64_t>(root_multiplicity(p, *c->point))}};
  }
  const auto local = localize(p, flag, 0);
  ValuationVector v;
  v.entries.assign(local.begin()->first.begin(), local.begin()->first.end());
  return v;
}

ValuationVector denominator_valuation(const Factorization& den, const Flag& flag, std::size_t d) {
  ValuationVector total{std::vector<std::int64_t>(d, 0)};
  for (const auto& [factor, mult] : den) {
    ValuationVector v = poly_valuation(factor, flag);
    for (auto& x : v.entries) x *= mult;
    total = total + v;
  }
  return total;
}

void axpy(LocalForm& target, const Scalar& c, const LocalForm& source) {
  for (const auto& [e, v] : source) {
    auto [slot, inserted] = target.try_emplace(e, -c * v);
    if (!inserted) {
      slot->second -= c * v;
      if (sgn(slot->second) == 0) target.erase(slot);
    }
  }
}

}  // namespace

Flag Flag::coordinate(std::vector<std::size_t> order, std::vector<Scalar> center) {
  if (order.size() != center.size()) throw FlagInapplicable("flag order and center differ in length");
  if (order.empty()) throw FlagInapplicable("coordinate flag needs at least one variable");
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw FlagInapplicable("flag variable order is not a permutation");
  return Flag(CoordinateFlag{std::move(order), std::move(center)});
}

Flag Flag::coordinate_origin(std::size_t d) {
  std::vector<std::size_t> order(d);
  for (std::size_t i = 0; i < d; ++i) order[i] = i;
  return coordinate(std::move(order), std::vector<Scalar>(d, Scalar(0)));
}

std::size_t Flag::dimension() const {
  if (is_curve()) return 1;
  return as_coordinate()->order.size();
}

std::string Flag::to_string() const {
  if (const auto* c = as_curve()) return c->point ? "point(" + c->point->get_str() + ")" : "point(inf)";
  const auto& cf = *as_coordinate();
  std::ostringstream os;
  os << "coordinate([";
  for (std::size_t i = 0; i < cf.order.size(); ++i) os << (i ? "," : "") << cf.order[i] + 1;
  os << "],[";
  for (std::size_t i = 0; i < cf.center.size(); ++i) os << (i ? "," : "") << cf.center[i].get_str();
  os << "])";
  return os.str();
}

ValuationVector ValuationVector::operator+(const ValuationVector& o) const {
  ValuationVector r = *this;
  for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += o.entries.at(i);
  return r;
}

ValuationVector ValuationVector::operator-(const ValuationVector& o) const {
  ValuationVector r = *this;
  for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= o.entries.at(i);
  return r;
}

bool ValuationVector::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](auto v) { return v == 0; });
}

std::string ValuationVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) s += (i ? "," : "") + std::to_string(entries[i]);
  return s + ")";
}

ValuationVector multivaluation(const RationalFunction& f, const Flag& flag) {
  if (f.is_zero()) throw UndefinedValuation("multivaluation of the zero element");
  require_applicable(f.variables(), flag);
  return poly_valuation(f.numerator(), flag) - denominator_valuation(f.factors(), flag, flag.dimension());
}

std::vector<ValuedElement> valuation_image(const Basis& v, const Flag& flag) {
  std::vector<ValuedElement> out;
  if (v.empty()) return out;
  require_applicable(v.variables(), flag);

  const auto& elements = v.elements();
  std::uint32_t bound = 0;
  for (const auto& f : elements) bound = std::max(bound, f.numerator().total_degree());
  const bool at_infinity = flag.as_curve() && !flag.as_curve()->point;
  const ValuationVector den = denominator_valuation(v.shape(), flag, flag.dimension());

  std::vector<LocalForm> local;
  std::vector<Poly> numer;
  local.reserve(elements.size());
  for (const auto& f : elements) {
    local.push_back(localize(f.numerator(), flag, bound));
    numer.push_back(f.numerator());
  }

  // Later rows are reduced against earlier rows sharing their leading value.
  std::map<Exponent, std::size_t> fixed;
  for (std::size_t i = 0; i < local.size(); ++i) {
    for (;;) {
      if (local[i].empty()) throw ModelError("valuation_image: basis elements are linearly dependent");
      const auto& [lead, coeff] = *local[i].begin();
      auto hit = fixed.find(lead);
      if (hit == fixed.end()) {
        fixed.emplace(lead, i);
        break;
      }
      const std::size_t j = hit->second;
      const Scalar c = coeff / local[j].begin()->second;
      axpy(local[i], c, local[j]);
      numer[i] -= numer[j] * c;
    }
  }

  out.reserve(fixed.size());
  for (const auto& [lead, i] : fixed) {
    ValuationVector val;
    val.entries.assign(lead.begin(), lead.end());
    if (at_infinity) val.entries[0] -= bound;
    out.push_back({val - den, RationalFunction(numer[i], v.shape())});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

}  // namespace okbody
