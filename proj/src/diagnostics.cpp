// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/diagnostics.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "okbody/error.hpp"

namespace okbody {

namespace {

Scalar ratio_of(std::size_t num, std::size_t den) {
  if (den == 0) return 1;
  Scalar q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

std::size_t effective_window(std::size_t requested, std::size_t length) {
  if (length == 0) return 0;
  return std::clamp<std::size_t>(requested, 1, length);
}

}  // namespace

const Cond3Entry* Cond3Table::find(unsigned p, unsigned n) const {
  for (const auto& e : entries)
    if (e.p == p && e.n == n) return &e;
  return nullptr;
}

std::vector<Cond3Entry> Cond3Table::row(unsigned p) const {
  std::vector<Cond3Entry> out;
  for (const auto& e : entries)
    if (e.p == p) out.push_back(e);
  return out;
}

Cond3Table condition3_table(const GradedAlgebraModel& model, const std::vector<unsigned>& P, unsigned N, bool clamp) {
  if (N == 0) throw ModelError("condition3_table needs N >= 1");
  Cond3Table t;
  t.model_dimension = model.dimension();
  t.N = N;
  std::vector<unsigned> ps = P;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  std::vector<std::pair<unsigned, unsigned>> rows;  // (p, last n)
  for (unsigned p : ps) {
    if (p == 0) throw ModelError("condition3_table: p must be positive");
    unsigned last = N;
    if (static_cast<unsigned long>(p) * N > model.truncation()) {
      if (!clamp)
        throw TruncationError("condition3_table: p*N = " + std::to_string(static_cast<unsigned long>(p) * N) +
                              " exceeds the truncation " + std::to_string(model.truncation()));
      last = model.truncation() / p;
      if (last == 0) {
        t.notes.push_back("p=" + std::to_string(p) + " skipped: B_p lies beyond the truncation");
        continue;
      }
      t.notes.push_back("p=" + std::to_string(p) + " clamped to n<=" + std::to_string(last));
    }
    t.ps.push_back(p);
    rows.emplace_back(p, last);
  }

  // Rows are independent; S^{k+1} B_p = S^k B_p * B_p along each row.
  std::vector<std::future<std::vector<Cond3Entry>>> jobs;
  for (auto [p, last] : rows) {
    jobs.push_back(std::async(std::launch::async, [&model, p = p, last = last] {
      std::vector<Cond3Entry> out;
      const auto chain = power_chain(model, p, last);
      for (unsigned n = 1; n <= last; ++n) {
        Cond3Entry e;
        e.p = p;
        e.n = n;
        e.power_dimension = chain[n - 1].dimension();
        e.piece_dimension = model.graded_piece(p * n).dimension();
        e.ratio = ratio_of(e.power_dimension, e.piece_dimension);
        out.push_back(std::move(e));
      }
      return out;
    }));
  }
  for (auto& j : jobs) {
    auto part = j.get();
    t.entries.insert(t.entries.end(), part.begin(), part.end());
  }
  return t;
}

Scalar liminf_estimate(const std::vector<Scalar>& seq, std::size_t window) {
  if (seq.empty()) throw ModelError("liminf_estimate: empty sequence");
  if (window == 0 || window > seq.size()) throw ModelError("liminf_estimate: window outside [1, length]");
  return *std::min_element(seq.end() - static_cast<long>(window), seq.end());
}

Scalar limsup_estimate(const std::vector<Scalar>& seq, std::size_t window) {
  if (seq.empty()) throw ModelError("limsup_estimate: empty sequence");
  if (window == 0 || window > seq.size()) throw ModelError("limsup_estimate: window outside [1, length]");
  return *std::max_element(seq.end() - static_cast<long>(window), seq.end());
}

std::optional<Scalar> RankRatioReport::max_deviation(unsigned from, unsigned to) const {
  Scalar best = 0;
  for (const auto& rr : ratios) {
    if (rr.n < from || rr.n > to) continue;
    if (!rr.ratio) return std::nullopt;
    Scalar dev = abs(*rr.ratio - 1);
    if (dev > best) best = dev;
  }
  return best;
}

std::optional<Scalar> RankRatioReport::tail_deviation() const {
  if (ratios.empty()) return Scalar(0);
  return max_deviation(N - static_cast<unsigned>(window) + 1, N);
}

RankRatioReport rank_ratio_check(const GradedAlgebraModel& model, unsigned r, unsigned N, std::size_t window) {
  if (r == 0 || N == 0) throw ModelError("rank_ratio_check needs positive r and N");
  if (static_cast<unsigned long>(N) + r > model.truncation())
    throw TruncationError("rank_ratio_check: N + r exceeds the truncation");
  RankRatioReport rep;
  rep.r = r;
  rep.N = N;
  rep.window = effective_window(window == 0 ? std::max<std::size_t>(1, N / 4) : window, N);
  for (unsigned n = 1; n <= N; ++n) {
    RankRatio rr;
    rr.n = n;
    rr.rank_n = model.graded_piece(n).dimension();
    rr.rank_shifted = model.graded_piece(n + r).dimension();
    if (rr.rank_n == 0) {
      rep.infinite_witnesses.push_back(n);
    } else {
      rr.ratio = ratio_of(rr.rank_shifted, rr.rank_n);
    }
    rep.ratios.push_back(std::move(rr));
  }
  return rep;
}

GrowthProxies growth_proxies(const GradedAlgebraModel& model, unsigned M, std::size_t window) {
  if (M == 0) throw ModelError("growth_proxies needs M >= 1");
  GrowthProxies g;
  g.M = M;
  g.window = effective_window(window == 0 ? std::max<std::size_t>(1, M / 4) : window, M);
  std::vector<Scalar> seq;
  for (unsigned m = 1; m <= M; ++m) {
    Integer md = 1;
    for (std::size_t i = 0; i < model.dimension(); ++i) md *= m;
    Scalar v(Integer(static_cast<unsigned long>(model.graded_piece(m).dimension())), md);
    v.canonicalize();
    seq.push_back(v);
  }
  g.liminf = liminf_estimate(seq, g.window);
  g.limsup = limsup_estimate(seq, g.window);
  return g;
}

std::vector<ScheduleEntry> default_schedule(unsigned N) {
  std::vector<ScheduleEntry> out;
  for (unsigned den : {2u, 4u, 8u}) {
    ScheduleEntry e;
    e.epsilon = Scalar(1, den);
    unsigned target = 2 * den;  // 2 / epsilon
    unsigned p0 = 1;
    while (p0 < target) p0 *= 2;
    e.p0 = p0;
    e.window = std::max(1u, N / 4);
    out.push_back(e);
  }
  return out;
}

std::string Verdict::status_name() const {
  switch (status) {
    case Status::ConsistentWithApproximable:
      return "ConsistentWithApproximable";
    case Status::Violated:
      return "Violated";
    case Status::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Verdict approximability_verdict(const Cond3Table& table, const std::vector<ScheduleEntry>& schedule) {
  Verdict v;
  const std::size_t d = table.model_dimension;
  bool all_consistent = !schedule.empty();

  for (const auto& s : schedule) {
    const Scalar bound = 1 - s.epsilon;
    std::vector<unsigned> tested;
    Scalar worst = 1;
    unsigned worst_p = 0;
    bool consistent = true;
    for (unsigned p : table.ps) {
      if (p < s.p0) continue;
      const auto row = table.row(p);
      if (row.empty()) continue;
      tested.push_back(p);
      const std::size_t w = row.size() < table.N ? std::max<std::size_t>(1, row.size() / 4)
                                                 : effective_window(s.window, row.size());
      std::vector<Cond3Entry> tail(row.end() - static_cast<long>(w), row.end());
      for (const auto& e : tail) {
        if (worst_p == 0 || e.ratio < worst) {
          worst = e.ratio;
          worst_p = p;
        }
        if (e.ratio <= bound) consistent = false;
      }

      // Structural certificate: S^n B_p has at most C(n+r-1, r-1) dimensions.
      const std::size_t r = row.front().power_dimension;
      if (r == 0 || r - 1 >= d) continue;
      std::vector<unsigned> ns;
      std::vector<Scalar> caps;
      for (const auto& e : tail) {
        if (e.ratio > bound || e.piece_dimension == 0) continue;
        ns.push_back(e.n);
        Scalar cap(binomial(e.n + r - 1, r - 1), Integer(static_cast<unsigned long>(e.piece_dimension)));
        cap.canonicalize();
        caps.push_back(cap);
      }
      if (ns.size() < 2) continue;
      bool monotone = true;
      for (std::size_t i = 1; i < caps.size(); ++i)
        if (caps[i] > caps[i - 1]) monotone = false;
      if (!monotone) continue;
      if (!v.witness || v.witness->p < p) {
        std::ostringstream reason;
        reason << "dim B_" << p << " = " << r << " and r-1 < d = " << d << ", so dim S^n B_" << p
               << " <= C(n+" << r - 1 << "," << r - 1 << ") while the binomial bound over dim B_np is nonincreasing"
               << " along the witnessing n";
        v.witness = Verdict::Witness{s.epsilon, p, ns, bound, reason.str()};
      }
    }
    std::ostringstream note;
    note << "epsilon=" << s.epsilon.get_str() << " p0=" << s.p0 << " window=" << s.window << ": ";
    if (tested.empty()) {
      note << "no tested p >= p0";
      consistent = false;
    } else {
      note << "tested p in {";
      for (std::size_t i = 0; i < tested.size(); ++i) note << (i ? "," : "") << tested[i];
      note << "}, min windowed ratio " << worst.get_str() << " (" << to_decimal(worst) << ") at p=" << worst_p
           << (consistent ? ", all above " : ", not all above ") << bound.get_str();
    }
    v.notes.push_back(note.str());
    if (!consistent) all_consistent = false;
  }

  if (v.witness) {
    v.status = Verdict::Status::Violated;
  } else if (all_consistent) {
    v.status = Verdict::Status::ConsistentWithApproximable;
  } else {
    v.status = Verdict::Status::Inconclusive;
  }
  v.notes.push_back("ratios are finite-truncation proxies for liminf over n; no asymptotic claim is made");
  return v;
}

Verdict approximability_verdict(const GradedAlgebraModel& model, const std::vector<unsigned>& P, unsigned N,
                                const std::vector<ScheduleEntry>& schedule) {
  return approximability_verdict(condition3_table(model, P, N), schedule);
}

}  // namespace okbody
