// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Reference computations used as test oracles. They deliberately share no
// code with the library: plain integer matrices, digit sums and brute-force
// counting.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
        mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// Rank of a rational matrix: rows are scaled to integers first.
inline std::size_t rational_rank(const std::vector<std::vector<mpq_class>>& m) {
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : m) {
    mpz_class l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> r;
    for (const auto& q : row) r.push_back(q.get_num() * (l / q.get_den()));
    a.push_back(std::move(r));
  }
  return bareiss_rank(std::move(a));
}

/// Columns at which the prefix rank of `m` increases, i.e. the pivot
/// columns of its row space in the given column order.
inline std::vector<std::size_t> rank_jump_columns(const std::vector<std::vector<mpq_class>>& m) {
  std::vector<std::size_t> out;
  if (m.empty()) return out;
  const std::size_t cols = m[0].size();
  std::size_t prev = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<std::vector<mpq_class>> prefix;
    for (const auto& row : m) prefix.emplace_back(row.begin(), row.begin() + static_cast<long>(c) + 1);
    const std::size_t r = rational_rank(prefix);
    if (r > prev) out.push_back(c);
    prev = r;
  }
  return out;
}

/// Binary digit sum.
inline unsigned digit_sum2(unsigned m) {
  unsigned s = 0;
  for (; m; m >>= 1) s += m & 1U;
  return s;
}

/// sum_{i >= 1} floor(m / 2^i) by direct summation.
inline unsigned dyadic_floor_sum(unsigned m) {
  unsigned s = 0;
  for (unsigned long p = 2; p <= m; p *= 2) s += static_cast<unsigned>(m / p);
  return s;
}

/// Number of lattice points of m * (unit simplex in R^2), by enumeration.
inline std::size_t triangle_points(unsigned m) {
  std::size_t n = 0;
  for (unsigned a = 0; a <= m; ++a)
    for (unsigned b = 0; a + b <= m; ++b) ++n;
  return n;
}

/// Size of the n-fold sumset of {0..deg}: the exponents reachable by products
/// of n elements of a monomial basis x^0..x^deg.
inline std::size_t sumset_size(unsigned deg, unsigned n) {
  std::set<unsigned> cur = {0};
  for (unsigned k = 0; k < n; ++k) {
    std::set<unsigned> next;
    for (unsigned a : cur)
      for (unsigned b = 0; b <= deg; ++b) next.insert(a + b);
    cur = std::move(next);
  }
  return cur.size();
}

/// max over 1 <= m <= M of floor(m * a) / m.
inline mpq_class floor_sup(const mpq_class& a, unsigned M) {
  mpq_class best = 0;
  for (unsigned m = 1; m <= M; ++m) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), mpz_class(a.get_num() * m).get_mpz_t(), a.get_den_mpz_t());
    mpq_class v(f, m);
    v.canonicalize();
    if (v > best) best = v;
  }
  return best;
}

}  // namespace oracle
