// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Finite-truncation diagnostics for the approximability condition and rank growth.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "okbody/algebra.hpp"

namespace okbody {

struct Cond3Entry {
  unsigned p = 0;
  unsigned n = 0;
  std::size_t power_dimension = 0;  // dim S^n B_p
  std::size_t piece_dimension = 0;  // dim B_np
  Scalar ratio;                     // 1 when both are zero
};

struct Cond3Table {
  std::size_t model_dimension = 0;
  std::vector<unsigned> ps;
  unsigned N = 0;
  std::vector<Cond3Entry> entries;  // ordered by (p, n)
  std::vector<std::string> notes;

  const Cond3Entry* find(unsigned p, unsigned n) const;
  std::vector<Cond3Entry> row(unsigned p) const;
};

/// Rows p in P, n = 1..N. With `clamp`, each row stops at the model
/// truncation instead of raising TruncationError.
Cond3Table condition3_table(const GradedAlgebraModel& model, const std::vector<unsigned>& P, unsigned N,
                            bool clamp = false);

/// Minimum / maximum over the last `window` entries. Throws ModelError on an
/// empty sequence or a window outside [1, size].
Scalar liminf_estimate(const std::vector<Scalar>& seq, std::size_t window);
Scalar limsup_estimate(const std::vector<Scalar>& seq, std::size_t window);

struct RankRatio {
  unsigned n = 0;
  std::size_t rank_n = 0;
  std::size_t rank_shifted = 0;  // rk B_{n+r}
  std::optional<Scalar> ratio;   // empty when rk B_n = 0
};

struct RankRatioReport {
  unsigned r = 0;
  unsigned N = 0;
  std::size_t window = 0;
  std::vector<RankRatio> ratios;  // n = 1..N
  std::vector<unsigned> infinite_witnesses;

  /// max |ratio - 1| over from <= n <= to; empty if an infinite ratio occurs there.
  std::optional<Scalar> max_deviation(unsigned from, unsigned to) const;
  /// Over the tail window.
  std::optional<Scalar> tail_deviation() const;
};

/// rk B_{n+r} / rk B_n for n = 1..N; `window` 0 means max(1, N/4).
RankRatioReport rank_ratio_check(const GradedAlgebraModel& model, unsigned r, unsigned N, std::size_t window = 0);

struct GrowthProxies {
  unsigned M = 0;
  std::size_t window = 0;
  Scalar liminf;  // of rk B_m / m^d over the window
  Scalar limsup;
};
GrowthProxies growth_proxies(const GradedAlgebraModel& model, unsigned M, std::size_t window = 0);

struct ScheduleEntry {
  Scalar epsilon;
  unsigned p0 = 1;
  std::size_t window = 1;  // number of trailing n per row
};

/// epsilon in {1/2, 1/4, 1/8}, p0 = 2/epsilon rounded to a power of two, window max(1, N/4).
std::vector<ScheduleEntry> default_schedule(unsigned N);

struct Verdict {
  enum class Status { ConsistentWithApproximable, Violated, Inconclusive };
  struct Witness {
    Scalar epsilon;
    unsigned p = 0;
    std::vector<unsigned> ns;  // witnessing n in the window
    Scalar bound;              // ratio <= bound = 1 - epsilon at every witnessing n
    std::string reason;
  };

  Status status = Status::Inconclusive;
  std::optional<Witness> witness;
  std::vector<std::string> notes;

  std::string status_name() const;
};

/// Sequential fold over a completed table.
///
/// Violated: some scheduled epsilon has a tested p >= p0 with r = dim B_p,
/// r - 1 < d, ratio <= 1 - epsilon at two or more windowed n, and the
/// binomial bound C(n+r-1, r-1) / dim B_np nonincreasing along them.
/// Consistent: every epsilon has a tested p >= p0 and every tested
/// p >= p0 keeps all windowed ratios above 1 - epsilon.
Verdict approximability_verdict(const Cond3Table& table, const std::vector<ScheduleEntry>& schedule);
Verdict approximability_verdict(const GradedAlgebraModel& model, const std::vector<unsigned>& P, unsigned N,
                                const std::vector<ScheduleEntry>& schedule);

Integer binomial(unsigned long n, unsigned long k);

}  // namespace okbody
