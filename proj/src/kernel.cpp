// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "okbody/error.hpp"

namespace okbody {

namespace {

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Dense univariate coefficients, index = degree.
std::vector<Scalar> to_dense(const Poly& p) {
  std::vector<Scalar> out(p.is_zero() ? 0 : p.total_degree() + 1);
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

Poly from_dense(const Variables& vars, const std::vector<Scalar>& coeffs) {
  Poly p(vars);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (sgn(coeffs[k]) != 0) p.add_term(Exponent{static_cast<std::uint32_t>(k)}, coeffs[k]);
  return p;
}

// Synthetic division by (x - root); returns the remainder.
Scalar synthetic_divide(std::vector<Scalar>& coeffs, const Scalar& root) {
  if (coeffs.empty()) return 0;
  Scalar carry = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    Scalar next = coeffs[k] + carry * root;
    coeffs[k] = carry;
    carry = next;
  }
  coeffs.pop_back();
  return carry;
}

void require_univariate(const Poly& p, const char* what) {
  if (p.num_variables() != 1) throw ModelError(std::string(what) + " requires a univariate polynomial");
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = trim(body.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : trim(body.substr(slash + 1));
  if (!is_digits(num) || !is_digits(den))
    throw ParseError(0, "not an exact rational: '" + std::string(text) + "'");
  Scalar q;
  q.get_num() = Integer(std::string(num));
  q.get_den() = Integer(std::string(den));
  if (q.get_den() == 0) throw ParseError(0, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  if (!s.empty() && s.front() == '-') q = -q;
  return q;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

std::string to_decimal(const Scalar& q) {
  if (sgn(q) == 0) return "0";
  mpf_class f(q, 512);
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.12Fg", f.get_mpf_t());
  return buf;
}

Scalar fraction(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw ModelError("zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

Integer floor_of(const Scalar& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Scalar& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  std::uint64_t da = 0, db = 0;
  for (auto v : a) da += v;
  for (auto v : b) db += v;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(const Variables& vars, const Scalar& c) {
  Poly p(vars);
  p.add_term(Exponent(vars.size(), 0), c);
  return p;
}

Poly Poly::variable(const Variables& vars, std::size_t index) {
  if (index >= vars.size()) throw ModelError("variable index out of range");
  Exponent e(vars.size(), 0);
  e[index] = 1;
  return monomial(vars, std::move(e));
}

Poly Poly::monomial(const Variables& vars, Exponent e, const Scalar& c) {
  if (e.size() != vars.size()) throw ModelError("exponent length does not match variable count");
  Poly p(vars);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
}

std::uint32_t Poly::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

std::uint32_t Poly::degree_in(std::size_t index) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(index));
  return d;
}

Scalar Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

const Scalar& Poly::leading_coefficient() const {
  if (terms_.empty()) throw ModelError("leading coefficient of the zero polynomial");
  return terms_.rbegin()->second;
}

void Poly::add_term(const Exponent& e, const Scalar& c) {
  if (e.size() != vars_.size()) throw ModelError("exponent length does not match variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Poly::require_same_variables(const Poly& o) const {
  if (vars_ != o.vars_) throw ModelError("mixed variable sets in polynomial arithmetic");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_variables(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_variables(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator+(const Poly& o) const { return Poly(*this) += o; }
Poly Poly::operator-(const Poly& o) const { return Poly(*this) -= o; }
Poly Poly::operator*(const Scalar& c) const { return Poly(*this) *= c; }

Poly Poly::operator*(const Poly& o) const {
  require_same_variables(o);
  Poly r(vars_);
  Exponent e(vars_.size());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(vars_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Scalar Poly::evaluate(std::span<const Scalar> point) const {
  if (point.size() != vars_.size()) throw ModelError("evaluation point has wrong dimension");
  Scalar total = 0;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    total += t;
  }
  return total;
}

Poly Poly::translated(std::span<const Scalar> shift) const {
  if (shift.size() != vars_.size()) throw ModelError("translation has wrong dimension");
  if (std::all_of(shift.begin(), shift.end(), [](const Scalar& s) { return sgn(s) == 0; })) return *this;
  if (vars_.size() == 1) {
    // Taylor shift by Horner: P(x + s).
    auto dense = to_dense(*this);
    std::vector<Scalar> acc;
    for (std::size_t k = dense.size(); k-- > 0;) {
      // acc <- acc * (x + s) + dense[k]
      acc.emplace_back(0);
      for (std::size_t j = acc.size() - 1; j > 0; --j) acc[j] = acc[j - 1] + acc[j] * shift[0];
      acc[0] = acc[0] * shift[0] + dense[k];
    }
    return from_dense(vars_, acc);
  }
  // Multivariate: expand each monomial as a product of binomial powers.
  std::map<std::pair<std::size_t, std::uint32_t>, Poly> binomials;
  auto binomial_power = [&](std::size_t j, std::uint32_t k) -> const Poly& {
    auto key = std::make_pair(j, k);
    auto it = binomials.find(key);
    if (it == binomials.end()) {
      Poly lin = variable(vars_, j) + constant(vars_, shift[j]);
      it = binomials.emplace(key, lin.pow(k)).first;
    }
    return it->second;
  };
  Poly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent fixed(vars_.size(), 0);
    std::vector<std::size_t> moving;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (sgn(shift[j]) == 0) fixed[j] = e[j];
      else moving.push_back(j);
    }
    Poly t = monomial(vars_, fixed, c);
    for (auto j : moving) t = t * binomial_power(j, e[j]);
    r += t;
  }
  return r;
}

bool Poly::operator<(const Poly& o) const {
  if (vars_ != o.vars_) return vars_ < o.vars_;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  GrlexLess less;
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (less(a->first, b->first)) return true;
    if (less(b->first, a->first)) return false;
    if (a->second != b->second) return a->second < b->second;
  }
  return a == terms_.end() && b != o.terms_.end();
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Scalar mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](auto v) { return v > 0; });
    bool need_sep = false;
    if (!has_var || mag != 1) {
      os << mag.get_str();
      need_sep = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_sep) os << '*';
      os << vars_[i];
      if (e[i] > 1) os << '^' << e[i];
      need_sep = true;
    }
  }
  return os.str();
}

std::uint32_t root_multiplicity(const Poly& p, const Scalar& root) {
  require_univariate(p, "root multiplicity");
  if (p.is_zero()) throw UndefinedValuation("order of vanishing of the zero polynomial");
  auto dense = to_dense(p);
  std::uint32_t k = 0;
  for (;;) {
    auto trial = dense;
    if (sgn(synthetic_divide(trial, root)) != 0) return k;
    dense = std::move(trial);
    ++k;
  }
}

Poly divide_by_linear(const Poly& p, const Scalar& root, std::uint32_t k) {
  require_univariate(p, "linear division");
  auto dense = to_dense(p);
  for (std::uint32_t i = 0; i < k; ++i)
    if (sgn(synthetic_divide(dense, root)) != 0) throw ModelError("polynomial not divisible by linear factor");
  return from_dense(p.variables(), dense);
}

// ---------------------------------------------------------------------------
// Factorizations and rational functions

Factorization factorization_lcm(const Factorization& a, const Factorization& b) {
  Factorization r = a;
  for (const auto& [f, k] : b) {
    auto& slot = r[f];
    slot = std::max(slot, k);
  }
  return r;
}

bool factorization_divides(const Factorization& a, const Factorization& b) {
  for (const auto& [f, k] : a) {
    auto it = b.find(f);
    if (it == b.end() || it->second < k) return false;
  }
  return true;
}

RationalFunction::RationalFunction(Poly numerator, Factorization denominator) : num_(std::move(numerator)) {
  if (num_.is_zero()) return;
  for (auto& [factor, mult] : denominator) {
    if (mult == 0) continue;
    if (factor.variables() != num_.variables())
      throw ModelError("denominator factor over a different variable set");
    if (factor.is_zero()) throw ModelError("zero denominator factor");
    if (factor.is_constant()) {
      Scalar c = factor.leading_coefficient();
      for (std::uint32_t i = 0; i < mult; ++i) num_ *= 1 / c;
      continue;
    }
    const Scalar lc = factor.leading_coefficient();
    if (lc == 1) {
      den_[factor] += mult;
    } else {
      Poly normalized = factor * Scalar(1 / lc);
      for (std::uint32_t i = 0; i < mult; ++i) num_ *= 1 / lc;
      den_[normalized] += mult;
    }
  }
}

RationalFunction RationalFunction::constant(const Variables& vars, const Scalar& c) {
  return RationalFunction(Poly::constant(vars, c));
}

Poly RationalFunction::denominator() const {
  Poly d = Poly::constant(num_.variables(), 1);
  for (const auto& [f, k] : den_) d = d * f.pow(k);
  return d;
}

Poly RationalFunction::numerator_over(const Factorization& shape) const {
  if (num_.is_zero()) return num_;
  if (!factorization_divides(den_, shape)) throw ModelError("shape does not contain the element's denominator");
  Poly n = num_;
  for (const auto& [f, k] : shape) {
    auto it = den_.find(f);
    std::uint32_t have = it == den_.end() ? 0 : it->second;
    if (k > have) n = n * f.pow(k - have);
  }
  return n;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) {
    const auto& v = is_zero() ? variables() : o.variables();
    return RationalFunction(Poly(v));
  }
  Factorization den = den_;
  for (const auto& [f, k] : o.den_) den[f] += k;
  return RationalFunction(num_ * o.num_, std::move(den));
}

RationalFunction RationalFunction::operator*(const Scalar& c) const { return RationalFunction(num_ * c, den_); }

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  Factorization shape = factorization_lcm(den_, o.den_);
  return RationalFunction(numerator_over(shape) + o.numerator_over(shape), shape);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + o * Scalar(-1); }

RationalFunction RationalFunction::pow(unsigned k) const {
  RationalFunction r = constant(variables(), 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool RationalFunction::equals(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  Factorization shape = factorization_lcm(den_, o.den_);
  return numerator_over(shape) == o.numerator_over(shape);
}

std::string RationalFunction::to_string() const {
  std::string s = "(" + num_.to_string() + ")";
  if (den_.empty()) return s;
  s += "/(";
  bool first = true;
  for (const auto& [f, k] : den_) {
    if (!first) s += "*";
    first = false;
    s += "(" + f.to_string() + ")";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Echelon bases

Basis::Basis(Variables vars, Factorization shape, std::vector<Exponent> support, std::vector<SparseRow> rows)
    : vars_(std::move(vars)), shape_(std::move(shape)), support_(std::move(support)), rows_(std::move(rows)) {
  elements_.reserve(rows_.size());
  pivots_.reserve(rows_.size());
  for (const auto& row : rows_) {
    if (row.empty()) throw ModelError("basis row is zero");
    if (!pivots_.empty() && row.front().first <= pivots_.back())
      throw ModelError("basis rows are not in echelon order");
    pivots_.push_back(row.front().first);
    Poly n(vars_);
    for (const auto& [c, v] : row) n.add_term(support_.at(c), v);
    elements_.emplace_back(std::move(n), shape_);
  }
}

std::vector<Scalar> Basis::dense_row(std::size_t i) const {
  std::vector<Scalar> out(support_.size());
  for (const auto& [c, v] : rows_.at(i)) out[c] = v;
  return out;
}

bool Basis::contains(const RationalFunction& f) const {
  if (f.is_zero()) return true;
  if (empty()) return false;
  if (f.variables() != vars_) return false;
  if (factorization_divides(f.factors(), shape_)) {
    Poly n = f.numerator_over(shape_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar c = n.coefficient(support_[pivots_[i]]);
      if (sgn(c) != 0) n -= elements_[i].numerator() * c;
    }
    return n.is_zero();
  }
  std::vector<RationalFunction> all = elements_;
  all.push_back(f);
  return echelonize(all, vars_).dimension() == dimension();
}

bool Basis::same_span(const Basis& o) const {
  if (dimension() != o.dimension()) return false;
  return std::all_of(o.elements_.begin(), o.elements_.end(), [&](const auto& f) { return contains(f); });
}

Basis echelonize(std::span<const RationalFunction> elements) {
  for (const auto& f : elements)
    if (!f.variables().empty()) return echelonize(elements, f.variables());
  return Basis{};
}

Basis echelonize(std::span<const RationalFunction> elements, const Variables& vars) {
  using Row = Poly::Terms;
  Factorization shape;
  for (const auto& f : elements) {
    if (f.is_zero()) continue;
    if (f.variables() != vars) throw ModelError("echelonize: mixed variable sets");
    shape = factorization_lcm(shape, f.factors());
  }

  std::map<Exponent, Row, GrlexLess> pivot_rows;  // pivot column -> row (leading coefficient 1)
  std::map<Exponent, bool, GrlexLess> columns;
  for (const auto& f : elements) {
    if (f.is_zero()) continue;
    Poly n = f.numerator_over(shape);
    for (const auto& [e, c] : n.terms()) columns.emplace(e, true);
    Row r = n.terms();
    for (auto it = r.begin(); it != r.end();) {
      auto piv = pivot_rows.find(it->first);
      if (piv == pivot_rows.end()) {
        ++it;
        continue;
      }
      const Exponent key = it->first;
      const Scalar c = it->second;
      for (const auto& [e, v] : piv->second) {
        auto [slot, inserted] = r.try_emplace(e, -c * v);
        if (!inserted) {
          slot->second -= c * v;
          if (sgn(slot->second) == 0) r.erase(slot);
        }
      }
      it = r.upper_bound(key);
    }
    if (r.empty()) continue;
    const Exponent lead = r.begin()->first;
    const Scalar inv = 1 / r.begin()->second;
    for (auto& [e, v] : r) v *= inv;
    for (auto& [col, prow] : pivot_rows) {
      auto hit = prow.find(lead);
      if (hit == prow.end()) continue;
      const Scalar c = hit->second;
      for (const auto& [e, v] : r) {
        auto [slot, inserted] = prow.try_emplace(e, -c * v);
        if (!inserted) {
          slot->second -= c * v;
          if (sgn(slot->second) == 0) prow.erase(slot);
        }
      }
    }
    pivot_rows.emplace(lead, std::move(r));
  }

  std::vector<Exponent> support;
  support.reserve(columns.size());
  std::map<Exponent, std::size_t, GrlexLess> index;
  for (const auto& [e, unused] : columns) {
    index.emplace(e, support.size());
    support.push_back(e);
  }
  std::vector<Basis::SparseRow> rows;
  rows.reserve(pivot_rows.size());
  for (auto& [col, prow] : pivot_rows) {
    Basis::SparseRow sparse;
    sparse.reserve(prow.size());
    for (auto& [e, v] : prow) sparse.emplace_back(index.at(e), std::move(v));
    rows.push_back(std::move(sparse));
  }
  return Basis(vars, pivot_rows.empty() ? Factorization{} : shape, std::move(support), std::move(rows));
}

Basis product_space(const Basis& a, const Basis& b) {
  if (a.empty() || b.empty()) return Basis(a.variables(), {}, {}, {});
  if (a.variables() != b.variables()) throw ModelError("product_space: mixed variable sets");
  auto monomial = [](const Basis& x) {
    return std::all_of(x.rows().begin(), x.rows().end(), [](const auto& r) { return r.size() == 1; });
  };
  if (monomial(a) && monomial(b)) {
    // Products of monomials over fixed shapes are monomials over the merged shape.
    Factorization shape = a.shape();
    for (const auto& [f, k] : b.shape()) shape[f] += k;
    std::set<Exponent, GrlexLess> sums;
    for (const auto& ra : a.rows())
      for (const auto& rb : b.rows()) {
        const Exponent& ea = a.support()[ra.front().first];
        const Exponent& eb = b.support()[rb.front().first];
        Exponent e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        sums.insert(std::move(e));
      }
    std::vector<Exponent> support(sums.begin(), sums.end());
    std::vector<Basis::SparseRow> rows;
    rows.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) rows.push_back({{i, Scalar(1)}});
    return Basis(a.variables(), std::move(shape), std::move(support), std::move(rows));
  }
  std::vector<RationalFunction> products;
  products.reserve(a.dimension() * b.dimension());
  for (const auto& f : a.elements())
    for (const auto& g : b.elements()) products.push_back(f * g);
  return echelonize(products, a.variables());
}

}  // namespace okbody
