// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Usage: okbody_acceptance [scratch_dir]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "okbody/algebra.hpp"
#include "okbody/diagnostics.hpp"
#include "okbody/divisor.hpp"
#include "okbody/instance.hpp"
#include "okbody/okounkov.hpp"
#include "okbody/report.hpp"
#include "okbody/valuation.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace okbody;

namespace {

const fs::path kInstances = OKBODY_INSTANCE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Accumulates a verdict and the first few failure messages.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (++failures_ <= 3) failed_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& detail) const {
    if (pass_) return {true, detail};
    std::ostringstream os;
    os << failures_ << " failure(s): " << failed_.str();
    return {false, os.str()};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::ostringstream failed_;
};

InstanceDocument load(const std::string& file) { return load_instance(kInstances / file); }

std::string dec(const Scalar& q) { return q.get_str() + " (" + to_decimal(q) + ")"; }

Outcome valuation_counting() {
  std::mt19937_64 rng(20260101);
  const std::vector<std::pair<ModelPtr, Flag>> cases = {
      {load("dyadic.inst").model, Flag::curve_point(0)},
      {load("dyadic.inst").model, Flag::curve_point(1)},
      {load("line.inst").model, Flag::at_infinity()},
      {load("dyadic_sub.inst").model, Flag::curve_point(Scalar(1, 2))},
      {load("triangle.inst").model, Flag::coordinate_origin(2)},
      {load("triangle.inst").model, Flag::coordinate({1, 0}, {0, 0})},
      {load("parity.inst").model, Flag::coordinate_origin(1)},
      {load("dyadic_rescale2.inst").model, Flag::at_infinity()},
  };
  Tally t;
  int subspaces = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const auto& [model, flag] = cases[static_cast<std::size_t>(trial) % cases.size()];
    const unsigned m = 1 + static_cast<unsigned>(rng() % 10);
    const std::size_t count = 1 + rng() % 6;
    const Basis v = testing_support::random_subspace(*model, m, count, rng);
    if (v.dimension() == 0) continue;
    ++subspaces;
    const auto image = valuation_image(v, flag);
    std::set<ValuationVector> values;
    for (const auto& e : image) values.insert(e.value);
    const std::string where = model->name() + " m=" + std::to_string(m);
    t.require(values.size() == v.dimension(), where + ": |image| != dim V");
    t.require(values == testing_support::oracle_values(v, flag), where + ": image differs from pivot oracle");
  }
  t.require(subspaces >= 200, "fewer than 200 nonzero subspaces");
  return t.done(std::to_string(subspaces) + " subspaces (dim <= 6), |image| = dim V, 0 failures");
}

Outcome valuation_axioms() {
  std::mt19937_64 rng(20260102);
  const std::vector<std::pair<ModelPtr, Flag>> cases = {
      {load("dyadic.inst").model, Flag::curve_point(1)},
      {load("dyadic.inst").model, Flag::at_infinity()},
      {load("line.inst").model, Flag::curve_point(0)},
      {load("triangle.inst").model, Flag::coordinate_origin(2)},
      {load("triangle.inst").model, Flag::coordinate({1, 0}, {1, 0})},
  };
  Tally t;
  int pairs = 0;
  for (int trial = 0; pairs < 500 && trial < 2000; ++trial) {
    const auto& [model, flag] = cases[static_cast<std::size_t>(trial) % cases.size()];
    const auto f = testing_support::random_element(*model, 1 + static_cast<unsigned>(rng() % 6), rng);
    const auto g = testing_support::random_element(*model, 1 + static_cast<unsigned>(rng() % 6), rng);
    if (f.is_zero() || g.is_zero()) continue;
    ++pairs;
    const auto vf = multivaluation(f, flag);
    const auto vg = multivaluation(g, flag);
    t.require(multivaluation(f * g, flag) == vf + vg, model->name() + ": v(fg) != v(f) + v(g)");
    t.require(multivaluation(f * Scalar(-7, 3), flag) == vf, model->name() + ": v(cf) != v(f)");
    const auto s = f + g;
    if (!s.is_zero()) t.require(multivaluation(s, flag) >= std::min(vf, vg), model->name() + ": ultrametric");
  }
  t.require(pairs >= 500, "fewer than 500 pairs");
  return t.done(std::to_string(pairs) + " pairs, additivity and ultrametric exact");
}

Outcome dimension_oracle() {
  Tally t;
  for (unsigned m = 0; m <= 256; ++m)
    t.require(oracle::dyadic_floor_sum(m) == m - oracle::digit_sum2(m), "digit-sum identity at " + std::to_string(m));
  const auto dyadic = load("dyadic.inst").model;
  const auto line = load("line.inst").model;
  for (unsigned m = 0; m <= 256; ++m) {
    t.require(dyadic->graded_piece(m).dimension() == m - oracle::digit_sum2(m) + 1, "dyadic m=" + std::to_string(m));
    t.require(line->graded_piece(m).dimension() == m + 1, "line m=" + std::to_string(m));
  }
  return t.done("dyadic dim B_m = m - s2(m) + 1 and line dim B_m = m + 1 for m <= 256");
}

Outcome volume_identity() {
  Tally t;
  const auto tri = load("triangle.inst");
  const auto tri_rep = check_volume_identity(*tri.model, *tri.flag, 40);
  const Scalar v40 = fraction(2 * static_cast<long>(oracle::triangle_points(40)), 1600);
  std::string detail;
  if (!tri_rep.difference) {
    t.require(false, "triangle: comparison suppressed");
  } else {
    const Scalar diff = abs(*tri_rep.difference);
    t.require(diff <= Scalar(1, 10), "triangle |2 vol - v40| > 0.1");
    t.require(diff == fraction(3 * 40 + 2, 1600), "triangle difference != 122/1600");
    t.require(diff == abs(v40 - 1), "triangle difference disagrees with the lattice-count oracle");
    detail = "triangle M=40 diff " + dec(diff);
  }
  const auto line = load("line.inst");
  const auto line_rep = check_volume_identity(*line.model, *line.flag, 32);
  if (!line_rep.difference) {
    t.require(false, "line: comparison suppressed");
  } else {
    t.require(abs(*line_rep.difference) == Scalar(1, 32), "line difference != 1/32");
    detail += ", line M=32 diff " + dec(abs(*line_rep.difference));
  }
  return t.done(detail + " (tolerance 0.1)");
}

Outcome condition3() {
  Tally t;
  const auto dyadic = load("dyadic.inst").model;
  const auto table = condition3_table(*dyadic, {4, 8, 16}, 16);
  const auto verdict = approximability_verdict(table, default_schedule(16));
  t.require(verdict.status == Verdict::Status::ConsistentWithApproximable,
            "dyadic verdict " + verdict.status_name());
  const auto* e = table.find(8, 16);
  const Scalar frozen = fraction(static_cast<long>(oracle::sumset_size(oracle::dyadic_floor_sum(8), 16)),
                                static_cast<long>(oracle::dyadic_floor_sum(128) + 1));
  t.require(frozen == Scalar(113, 128), "oracle ratio differs from 113/128");
  t.require(e != nullptr && e->ratio == Scalar(113, 128), "dyadic (8,16) ratio != 113/128");

  const auto parity = load("parity.inst").model;
  std::vector<unsigned> P;
  for (unsigned p = 1; p <= 16; ++p) P.push_back(p);
  const auto pv = approximability_verdict(*parity, P, 16, default_schedule(16));
  t.require(pv.status == Verdict::Status::Violated, "parity verdict " + pv.status_name());
  t.require(pv.witness && pv.witness->p % 2 == 1, "parity witness p is not odd");
  std::string witness = pv.witness ? "p=" + std::to_string(pv.witness->p) : "none";
  return t.done("dyadic " + verdict.status_name() + ", ratio(8,16) = " + dec(e ? e->ratio : Scalar(0)) +
                "; parity " + pv.status_name() + " witness " + witness);
}

Outcome rank_ratios() {
  Tally t;
  const auto dyadic = load("dyadic.inst").model;
  const auto rep = rank_ratio_check(*dyadic, 1, 256);
  const auto dev = rep.max_deviation(100, 256);
  t.require(dev && *dev <= Scalar(1, 10), "dyadic max deviation over 100..256 > 0.1");
  const Scalar frozen = fraction(static_cast<long>(oracle::dyadic_floor_sum(128) + 1),
                                static_cast<long>(oracle::dyadic_floor_sum(127) + 1));
  t.require(frozen == Scalar(128, 121), "oracle ratio at 127 differs from 128/121");
  const auto& at127 = rep.ratios.at(126);
  t.require(at127.n == 127 && at127.ratio && *at127.ratio - 1 == Scalar(128, 121) - 1,
            "dyadic deviation at n=127 != 128/121 - 1");
  const auto parity = rank_ratio_check(*load("parity.inst").model, 1, 16);
  const auto pdev = parity.max_deviation(1, 16);
  t.require(!pdev || *pdev > 1, "parity deviation <= 1");
  return t.done("dyadic max dev " + (dev ? dec(*dev) : std::string("inf")) + " (tolerance 0.1), dev(127) = " +
                dec(*at127.ratio - 1) + "; parity max dev " + (pdev ? dec(*pdev) : std::string("inf")));
}

Outcome monotonicity() {
  Tally t;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(kInstances))
    if (entry.path().extension() == ".inst") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  const auto pairs = divisibility_pairs(48);
  std::size_t checks = 0;
  for (const auto& f : files) {
    const auto doc = load_instance(f);
    if (doc.model->truncation() < 48) {
      t.require(false, f.filename().string() + ": truncation below 48");
      continue;
    }
    const auto rep = check_monotonicity(*doc.model, pairs, false);
    checks += rep.checks.size();
    for (const auto& c : rep.checks)
      t.require(c.holds, f.filename().string() + " (" + std::to_string(c.m1) + "," + std::to_string(c.m2) +
                             "): " + c.detail);
  }
  return t.done(std::to_string(files.size()) + " instances, " + std::to_string(checks) +
                " divisibility pairs with m2 <= 48");
}

Outcome limit_divisor() {
  Tally t;
  const auto dyadic = load("dyadic.inst").model;
  const auto est = divisor_limit_estimate(*dyadic, 16);
  const auto sup = est.sup_divisor();
  std::map<PrimeDivisor, Scalar> expected;
  for (long i = 1; i <= 8; ++i) {
    const Scalar s = oracle::floor_sup(Scalar(1, 1L << i), 16);
    if (s != 0) expected.emplace(PrimeDivisor::point(Scalar(i)), s);
  }
  t.require(expected.size() == 4, "oracle support size != 4");
  t.require(sup == expected, "dyadic sups differ from {1/2, 1/4, 1/8, 1/16}");
  const auto decay = coefficient_decay(est, dyadic.get());
  std::map<unsigned, std::size_t> counts(decay.counts.begin(), decay.counts.end());
  t.require(counts[2] == 1 && counts[4] == 2 && counts[8] == 3, "threshold counts differ from {1, 2, 3}");
  std::ostringstream os;
  os << "sups {";
  bool first = true;
  for (const auto& [c, s] : sup) {
    os << (first ? "" : ", ") << c.to_string() << ": " << s.get_str();
    first = false;
  }
  os << "}, counts >=1/2: " << counts[2] << ", >=1/4: " << counts[4] << ", >=1/8: " << counts[8];
  return t.done(os.str());
}

Outcome inclusion() {
  Tally t;
  const auto dyadic = load("dyadic.inst").model;
  const auto line = load("line.inst").model;
  const auto sub = load("dyadic_sub.inst").model;
  t.require(check_inclusion(*dyadic, divisor_limit_estimate(*dyadic, 16), 16).passed, "dyadic M=16");
  t.require(check_inclusion(*line, divisor_limit_estimate(*line, 12), 12).passed, "line M=12");
  t.require(check_inclusion(*sub, divisor_limit_estimate(*sub, 16), 16).passed, "dyadic_sub M=16");
  const auto under = check_inclusion(*dyadic, divisor_limit_estimate(*dyadic, 2), 8);
  std::string witness = "none";
  if (!under.failures.empty()) {
    const auto& w = under.failures.front();
    witness = "m=" + std::to_string(w.m) + " at " + w.id.to_string() + " (" + w.check + ")";
    t.require(w.m == 4 && w.id == PrimeDivisor::point(Scalar(2)), "unexpected under-truncation witness " + witness);
  }
  t.require(!under.passed, "under-truncated run passed");
  return t.done("dyadic M=16, line M=12, dyadic_sub M=16 pass; under-truncated witness " + witness);
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    out[fs::relative(entry.path(), root).string()] = {std::istreambuf_iterator<char>(in),
                                                      std::istreambuf_iterator<char>()};
  }
  return out;
}

Outcome determinism(const fs::path& scratch) {
  Tally t;
  std::size_t files = 0;
  for (const char* name : {"dyadic.inst", "parity.inst", "dyadic_sub.inst", "triangle.inst"}) {
    const auto doc = load(name);
    std::vector<std::map<std::string, std::string>> trees;
    for (int run = 0; run < 2; ++run) {
      RunConfig cfg;
      cfg.command = Command::Report;
      cfg.seed = 7;
      cfg.load_validation_failure = doc.validation_failure;
      cfg.out_dir = scratch / "determinism" / (std::string(name) + "-" + std::to_string(run));
      fs::remove_all(cfg.out_dir);
      run_analysis(*doc.model, doc.flag, cfg);
      trees.push_back(read_tree(cfg.out_dir));
    }
    t.require(!trees[0].empty(), std::string(name) + ": no artifacts");
    t.require(trees[0] == trees[1], std::string(name) + ": output trees differ");
    files += trees[0].size();
  }
  return t.done("4 instances, 2 report runs each (seed 7), " + std::to_string(files) + " files byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "okbody-acceptance";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"valuation counting", valuation_counting},
      {"valuation axioms", valuation_axioms},
      {"dimension oracle", dimension_oracle},
      {"volume identity", volume_identity},
      {"condition (3) diagnostics", condition3},
      {"rank ratios", rank_ratios},
      {"divisor monotonicity", monotonicity},
      {"limit divisor and decay", limit_divisor},
      {"inclusion", inclusion},
      {"determinism", [&scratch] { return determinism(scratch); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
              << " (" << timing << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
