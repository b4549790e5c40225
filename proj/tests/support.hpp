// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Random sampling helpers and the pivot-column valuation oracle.

#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "okbody/algebra.hpp"
#include "okbody/valuation.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace okbody;

inline Scalar small_coefficient(std::mt19937_64& rng) { return Scalar(static_cast<long>(rng() % 9) - 4); }

/// A random combination of the echelon basis of B_m.
inline RationalFunction random_element(const GradedAlgebraModel& model, unsigned m, std::mt19937_64& rng) {
  const Basis& b = model.graded_piece(m);
  RationalFunction f(Poly(model.geometry().variables));
  for (const auto& e : b.elements()) f = f + e * small_coefficient(rng);
  return f;
}

/// Span of `count` random combinations of the basis of B_m.
inline Basis random_subspace(const GradedAlgebraModel& model, unsigned m, std::size_t count, std::mt19937_64& rng) {
  std::vector<RationalFunction> gens;
  for (std::size_t i = 0; i < count; ++i) gens.push_back(random_element(model, m, rng));
  return echelonize(gens, model.geometry().variables);
}

/// Coefficient matrix of `v` (numerators over its shape) in the given column order.
inline std::vector<std::vector<mpq_class>> coefficient_matrix(const std::vector<Poly>& numerators,
                                                              const std::vector<Exponent>& columns) {
  std::vector<std::vector<mpq_class>> m;
  for (const auto& n : numerators) {
    std::vector<mpq_class> row;
    for (const auto& c : columns) row.push_back(n.coefficient(c));
    m.push_back(std::move(row));
  }
  return m;
}

/// Valuation set of v \ 0 computed as pivot columns of the numerator matrix
/// with columns sorted by increasing local order, shifted by the shape.
inline std::set<ValuationVector> oracle_values(const Basis& v, const Flag& flag) {
  std::vector<Poly> local;  // numerators in local coordinates
  std::vector<std::int64_t> shift;
  if (const auto* c = flag.as_curve()) {
    if (!c->point) {
      std::int64_t shape_degree = 0;
      for (const auto& [f, k] : v.shape()) shape_degree += static_cast<std::int64_t>(f.total_degree()) * k;
      std::set<std::uint32_t> degrees;
      for (const auto& e : v.elements())
        for (const auto& [x, q] : e.numerator().terms()) degrees.insert(x[0]);
      std::vector<Exponent> columns;
      for (auto it = degrees.rbegin(); it != degrees.rend(); ++it) columns.push_back({*it});
      std::vector<Poly> nums;
      for (const auto& e : v.elements()) nums.push_back(e.numerator());
      std::set<ValuationVector> out;
      for (auto col : oracle::rank_jump_columns(coefficient_matrix(nums, columns)))
        out.insert({{shape_degree - static_cast<std::int64_t>(columns[col][0])}});
      return out;
    }
    Scalar s[1] = {*c->point};
    std::int64_t shape_order = 0;
    for (const auto& [f, k] : v.shape()) {
      Poly moved = f.translated(s);
      std::uint32_t low = 0;
      while (moved.coefficient({low}) == 0) ++low;
      shape_order += static_cast<std::int64_t>(low) * k;
    }
    for (const auto& e : v.elements()) local.push_back(e.numerator().translated(s));
    shift = {shape_order};
  } else {
    const auto& cf = *flag.as_coordinate();
    auto localize = [&](const Poly& p) {
      Poly moved = p.translated(cf.center);
      Poly out(p.variables());
      for (const auto& [e, q] : moved.terms()) {
        Exponent permuted(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) permuted[i] = e[cf.order[i]];
        out.add_term(permuted, q);
      }
      return out;
    };
    auto lex_min = [](const Poly& p) {
      Exponent best = p.terms().begin()->first;
      for (const auto& [e, q] : p.terms()) best = std::min(best, e);
      return best;
    };
    shift.assign(cf.order.size(), 0);
    for (const auto& [f, k] : v.shape()) {
      const Exponent low = lex_min(localize(f));
      for (std::size_t i = 0; i < low.size(); ++i) shift[i] += static_cast<std::int64_t>(low[i]) * k;
    }
    for (const auto& e : v.elements()) local.push_back(localize(e.numerator()));
  }
  std::set<Exponent> exps;  // std::less on vectors is lexicographic
  for (const auto& p : local)
    for (const auto& [e, q] : p.terms()) exps.insert(e);
  const std::vector<Exponent> columns(exps.begin(), exps.end());
  std::set<ValuationVector> out;
  for (auto col : oracle::rank_jump_columns(coefficient_matrix(local, columns))) {
    ValuationVector val;
    for (std::size_t i = 0; i < shift.size(); ++i)
      val.entries.push_back(static_cast<std::int64_t>(columns[col][i]) - shift[i]);
    out.insert(val);
  }
  return out;
}

}  // namespace testing_support
