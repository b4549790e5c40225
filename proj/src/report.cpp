// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/report.hpp"

#include <fstream>
#include <sstream>

#include "okbody/diagnostics.hpp"
#include "okbody/divisor.hpp"
#include "okbody/error.hpp"
#include "okbody/okounkov.hpp"

namespace okbody {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Artifacts {
 public:
  Artifacts(std::filesystem::path dir, RunResult& result) : dir_(std::move(dir)), result_(result) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir_ / name).string());
    out << content;
    if (!out) throw IoError("write failed for " + (dir_ / name).string());
    result_.files.push_back(name);
  }

 private:
  std::filesystem::path dir_;
  RunResult& result_;
};

unsigned clamp_to(unsigned value, unsigned truncation) { return std::max(1u, std::min(value, truncation)); }

std::string bool_cell(bool b) { return b ? "true" : "false"; }

std::vector<ScheduleEntry> schedule_for(const RunConfig& cfg, unsigned N) {
  if (cfg.epsilons.empty()) {
    auto s = default_schedule(N);
    if (cfg.window)
      for (auto& e : s) e.window = *cfg.window;
    return s;
  }
  std::vector<ScheduleEntry> out;
  for (const auto& eps : cfg.epsilons) {
    if (sgn(eps) <= 0 || eps >= 1) throw UsageError("epsilon must lie in (0,1), got " + eps.get_str());
    ScheduleEntry e;
    e.epsilon = eps;
    const Scalar target = 2 / eps;
    unsigned p0 = 1;
    while (Scalar(p0) < target) p0 *= 2;
    e.p0 = p0;
    e.window = cfg.window.value_or(std::max(1u, N / 4));
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------

void validate_section(const GradedAlgebraModel& model, const RunConfig& cfg, Artifacts& out, RunResult& result,
                      std::ostringstream& summary) {
  const unsigned top = std::min(12u, model.truncation());
  const auto rep = validate_model(model, cfg.samples, cfg.seed, top);
  out.write("validation.txt", rep.to_string());
  if (!rep.passed) result.findings += static_cast<int>(std::max<std::size_t>(1, rep.failures.size()));
  summary << "== validate ==\n" << rep.to_string();
}

void ranks_section(const GradedAlgebraModel& model, const RunConfig& cfg, Artifacts& out, std::ostringstream& summary) {
  const unsigned trunc = model.truncation();
  if (cfg.r >= trunc) throw UsageError("--r must be below the truncation " + std::to_string(trunc));
  const unsigned M = clamp_to(cfg.M.value_or(64), trunc);
  const unsigned N = clamp_to(cfg.N.value_or(M), trunc - cfg.r);

  const auto vols = volume_sequence(model, M);
  std::ostringstream vcsv;
  vcsv << "m,rank,v_m,v_m_decimal\n";
  std::vector<Scalar> vseq;
  for (const auto& t : vols) {
    vcsv << t.m << "," << t.rank << "," << csv_pair(t.value) << "\n";
    vseq.push_back(t.value);
  }
  out.write("volume_sequence.csv", vcsv.str());

  const auto rr = rank_ratio_check(model, cfg.r, N, cfg.window.value_or(0));
  std::ostringstream rcsv;
  rcsv << "n,rank_n,rank_n_plus_r,ratio,ratio_decimal,deviation,deviation_decimal\n";
  for (const auto& x : rr.ratios) {
    rcsv << x.n << "," << x.rank_n << "," << x.rank_shifted << ",";
    if (x.ratio) {
      rcsv << csv_pair(*x.ratio) << "," << csv_pair(abs(*x.ratio - 1)) << "\n";
    } else {
      rcsv << "inf,inf,inf,inf\n";
    }
  }
  out.write("rank_ratios.csv", rcsv.str());

  const std::size_t vwindow = std::clamp<std::size_t>(cfg.window.value_or(std::max(1u, M / 4)), 1, vseq.size());
  const auto growth = growth_proxies(model, M, cfg.window.value_or(0));
  summary << "== ranks ==\n";
  summary << "volume normalization: v_m = d! * rk B_m / m^d, d = " << model.dimension() << "\n";
  summary << "note: the alternative rk B_m / (m^d / d) differs from v_m by the factor (d-1)!\n";
  summary << "v_" << M << " = " << vols.back().value.get_str() << " (" << to_decimal(vols.back().value) << ")\n";
  summary << "v_m over the last " << vwindow << " m: min " << liminf_estimate(vseq, vwindow).get_str() << ", max "
          << limsup_estimate(vseq, vwindow).get_str() << "\n";
  summary << "rank ratios rk B_(n+" << cfg.r << ")/rk B_n, n <= " << N << ": ";
  if (auto dev = rr.tail_deviation()) {
    summary << "max |ratio-1| over the last " << rr.window << " n = " << dev->get_str() << " (" << to_decimal(*dev)
            << ")\n";
  } else {
    summary << "infinite ratio in the last " << rr.window << " n\n";
  }
  if (!rr.infinite_witnesses.empty())
    summary << "infinite-ratio witnesses (rk B_n = 0): " << rr.infinite_witnesses.size() << " values of n, first n = "
            << rr.infinite_witnesses.front() << "\n";
  summary << "rk B_m / m^d over the last " << growth.window << " m: liminf proxy " << growth.liminf.get_str() << " ("
          << to_decimal(growth.liminf) << "), limsup proxy " << growth.limsup.get_str() << " ("
          << to_decimal(growth.limsup) << "); both are shown since either reading of 'does not converge to 0' may apply\n";
}

void cond3_section(const GradedAlgebraModel& model, const RunConfig& cfg, Artifacts& out, RunResult& result,
                   std::ostringstream& summary) {
  const bool defaults = cfg.P.empty();
  std::vector<unsigned> P = cfg.P;
  if (defaults)
    for (unsigned p = 1; p <= 16; ++p) P.push_back(p);
  const unsigned N = cfg.N.value_or(16);
  const auto table = condition3_table(model, P, N, defaults);
  const auto schedule = schedule_for(cfg, N);
  const auto verdict = approximability_verdict(table, schedule);

  std::ostringstream csv;
  csv << "p,n,power_dim,piece_dim,ratio,ratio_decimal\n";
  for (const auto& e : table.entries)
    csv << e.p << "," << e.n << "," << e.power_dimension << "," << e.piece_dimension << "," << csv_pair(e.ratio) << "\n";
  out.write("cond3.csv", csv.str());

  std::ostringstream v;
  v << "status: " << verdict.status_name() << "\n";
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    v << "witness.epsilon: " << w.epsilon.get_str() << "\n";
    v << "witness.p: " << w.p << "\n";
    v << "witness.n:";
    for (auto n : w.ns) v << " " << n;
    v << "\n";
    v << "witness.bound: " << w.bound.get_str() << "\n";
    v << "witness.reason: " << w.reason << "\n";
  }
  for (const auto& s : schedule)
    v << "schedule: epsilon=" << s.epsilon.get_str() << " p0=" << s.p0 << " window=" << s.window << "\n";
  for (const auto& n : table.notes) v << "note: " << n << "\n";
  for (const auto& n : verdict.notes) v << "note: " << n << "\n";
  out.write("verdict.txt", v.str());

  summary << "== cond3 ==\n";
  for (unsigned p : table.ps) {
    const auto row = table.row(p);
    std::vector<Scalar> ratios;
    for (const auto& e : row) ratios.push_back(e.ratio);
    const std::size_t w = std::clamp<std::size_t>(cfg.window.value_or(std::max(1u, N / 4)), 1, ratios.size());
    const Scalar low = liminf_estimate(ratios, w);
    summary << "p=" << p << ": n<=" << row.size() << ", windowed min ratio (last " << w << ") " << low.get_str() << " ("
            << to_decimal(low) << ")\n";
  }
  summary << v.str();
  if (cfg.expect_approximable && verdict.status == Verdict::Status::Violated) ++result.findings;
}

void okounkov_section(const GradedAlgebraModel& model, const std::optional<Flag>& flag_in, const RunConfig& cfg,
                      Artifacts& out, RunResult& result, std::ostringstream& summary) {
  const std::size_t d = model.dimension();
  const Flag flag = cfg.flag ? *cfg.flag : flag_in ? *flag_in : model.default_flag();
  const unsigned M = clamp_to(cfg.M.value_or(d == 1 ? 64 : 24), model.truncation());

  const auto sample = collect_semigroup(model, flag, M);
  std::ostringstream s;
  s << "m";
  for (std::size_t t = 1; t <= d; ++t) s << ",v" << t;
  s << "\n";
  for (const auto& level : sample.levels)
    for (const auto& v : level.points) {
      s << level.m;
      for (auto x : v.entries) s << "," << x;
      s << "\n";
    }
  out.write("semigroup.csv", s.str());

  summary << "== okounkov ==\nflag: " << flag.to_string() << ", M = " << M << ", points = " << sample.size() << "\n";
  const auto violations = check_semigroup_closure(sample);
  summary << "semigroup closure on the sample: " << (violations.empty() ? "pass" : "FAIL") << "\n";
  result.findings += static_cast<int>(violations.size());

  if (d > 3) {
    summary << "exact hull skipped: unsupported dimension d = " << d << "\n";
    return;
  }
  const auto rep = check_volume_identity(model, flag, M);
  std::ostringstream b;
  b << "vertex";
  for (std::size_t t = 1; t <= d; ++t) b << ",c" << t << ",c" << t << "_decimal";
  b << "\n";
  for (std::size_t i = 0; i < rep.body.vertices().size(); ++i) {
    b << i;
    for (const auto& c : rep.body.vertices()[i]) b << "," << csv_pair(c);
    b << "\n";
  }
  out.write("body_vertices.csv", b.str());

  std::ostringstream vi;
  vi << "quantity,value,value_decimal\n";
  vi << "body_volume," << csv_pair(rep.body_volume) << "\n";
  vi << "normalized_body_volume," << csv_pair(rep.normalized_volume) << "\n";
  vi << "v_M," << csv_pair(rep.v_M) << "\n";
  if (rep.difference) vi << "difference," << csv_pair(*rep.difference) << "\n";
  out.write("volume_identity.csv", vi.str());

  summary << "d! vol(body) = " << rep.normalized_volume.get_str() << ", v_" << M << " = " << rep.v_M.get_str() << "\n";
  for (const auto& h : rep.hypotheses)
    summary << "hypothesis " << h.name << ": " << (h.holds ? "holds" : "fails") << " (" << h.detail << ")\n";
  if (rep.difference)
    summary << "|d! vol(body) - v_M| = " << rep.difference->get_str() << " (" << to_decimal(*rep.difference) << ")\n";
  for (const auto& n : rep.notes) summary << "note: " << n << "\n";
}

void divisor_section(const GradedAlgebraModel& model, const RunConfig& cfg, Artifacts& out, RunResult& result,
                     std::ostringstream& summary) {
  const Geometry& g = model.geometry();
  const unsigned M = clamp_to(cfg.M.value_or(16), model.truncation());
  const auto est = divisor_limit_estimate(model, M);

  std::ostringstream dcsv;
  dcsv << "m,id,coefficient,coefficient_over_m,coefficient_over_m_decimal\n";
  for (unsigned m = 1; m <= M; ++m)
    for (const auto& [c, v] : est.D[m - 1].coefficients())
      dcsv << m << "," << c.to_string(&g) << "," << v << "," << csv_pair(fraction(v, m)) << "\n";
  out.write("divisors.csv", dcsv.str());

  std::ostringstream ecsv;
  ecsv << "id,sup,sup_decimal,argmax\n";
  for (const auto& r : est.records) ecsv << r.id.to_string(&g) << "," << csv_pair(r.sup) << "," << r.argmax << "\n";
  out.write("divisor_estimate.csv", ecsv.str());

  std::ostringstream chain;
  chain << "id,m,value,value_decimal\n";
  for (const auto& r : est.records)
    for (std::size_t i = 0; i < r.divisors.size(); ++i)
      chain << r.id.to_string(&g) << "," << r.divisors[i] << "," << csv_pair(r.divisor_values[i]) << "\n";
  out.write("divisor_divisibility.csv", chain.str());

  const auto mono = check_monotonicity(model, divisibility_pairs(M));
  std::ostringstream mcsv;
  mcsv << "m1,m2,holds,detail\n";
  for (const auto& c : mono.checks)
    mcsv << c.m1 << "," << c.m2 << "," << bool_cell(c.holds) << "," << csv_field(c.detail) << "\n";
  out.write("monotonicity.csv", mcsv.str());
  std::ostringstream ocsv;
  ocsv << "m1,m2,detail\n";
  for (const auto& c : mono.incomparable_observations) ocsv << c.m1 << "," << c.m2 << "," << csv_field(c.detail) << "\n";
  out.write("monotonicity_observations.csv", ocsv.str());

  const auto inc = check_inclusion(model, est, M);
  std::ostringstream icsv;
  icsv << "m,id,check,detail\n";
  for (const auto& f : inc.failures)
    icsv << f.m << "," << f.id.to_string(&g) << "," << csv_field(f.check) << "," << csv_field(f.detail) << "\n";
  out.write("inclusion.csv", icsv.str());

  const auto decay = coefficient_decay(est, &model);
  std::ostringstream kcsv;
  kcsv << "l,threshold,threshold_decimal,count,analytic_count\n";
  for (std::size_t i = 0; i < decay.counts.size(); ++i) {
    const auto [l, n] = decay.counts[i];
    kcsv << l << "," << csv_pair(Scalar(1, l)) << "," << n << ",";
    if (i < decay.analytic.size()) kcsv << decay.analytic[i].second;
    kcsv << "\n";
  }
  out.write("decay.csv", kcsv.str());

  const auto bounds = check_divisor_bounds(model, est);

  summary << "== divisor ==\nM = " << M << "\n";
  summary << "D_" << M << " = " << est.D.back().to_string(&g) << "\n";
  summary << "estimate (sup of coeff(D_m)/m, m <= " << M << "):";
  if (est.records.empty()) summary << " empty";
  for (const auto& r : est.records) summary << " " << r.id.to_string(&g) << "=" << r.sup.get_str();
  summary << "\n";
  if (!est.zero_pieces.empty()) summary << "zero pieces skipped: " << est.zero_pieces.size() << "\n";
  summary << "monotonicity along divisibility (" << mono.checks.size() << " pairs): " << (mono.passed ? "pass" : "FAIL")
          << "\n";
  summary << "non-monotone incomparable pairs observed: " << mono.incomparable_observations.size() << "\n";
  summary << "inclusion at M = " << M << ": " << (inc.passed ? "pass" : "FAIL");
  if (!inc.failures.empty())
    summary << " (first failure m = " << inc.failures.front().m << " at " << inc.failures.front().id.to_string(&g) << ")";
  summary << "\n";
  for (const auto& n : inc.notes) summary << "note: " << n << "\n";
  summary << "coefficient bounds: " << (bounds.passed ? "pass" : "FAIL") << "\n";
  for (const auto& l : bounds.lines) summary << "  " << l << "\n";
  summary << "decay counts (l: #coeff >= 1/l):";
  for (const auto& [l, n] : decay.counts) summary << " " << l << ":" << n;
  summary << "\n";
  for (const auto& n : decay.notes) summary << "note: " << n << "\n";
  summary << "no convergence claim is made beyond the truncation\n";

  if (!mono.passed) result.findings += 1;
  if (!inc.passed) result.findings += 1;
  if (!bounds.passed) result.findings += 1;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "validate") return Command::Validate;
  if (name == "ranks") return Command::Ranks;
  if (name == "cond3") return Command::Cond3;
  if (name == "okounkov") return Command::Okounkov;
  if (name == "divisor") return Command::Divisor;
  if (name == "report") return Command::Report;
  throw UsageError("unknown subcommand '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Validate:
      return "validate";
    case Command::Ranks:
      return "ranks";
    case Command::Cond3:
      return "cond3";
    case Command::Okounkov:
      return "okounkov";
    case Command::Divisor:
      return "divisor";
    case Command::Report:
      return "report";
  }
  return "?";
}

std::string csv_pair(const Scalar& q) { return q.get_str() + "," + to_decimal(q); }

RunResult run_analysis(const GradedAlgebraModel& model, const std::optional<Flag>& instance_flag,
                       const RunConfig& config) {
  if (config.out_dir.empty()) throw UsageError("no output directory");
  if (config.M && *config.M == 0) throw UsageError("--M must be positive");
  if (config.N && *config.N == 0) throw UsageError("--N must be positive");
  if (config.r == 0) throw UsageError("--r must be positive");
  if (config.window && *config.window == 0) throw UsageError("--window must be positive");
  if (config.samples == 0) throw UsageError("--samples must be positive");
  for (auto p : config.P)
    if (p == 0) throw UsageError("--P entries must be positive");

  RunResult result;
  Artifacts out(config.out_dir, result);
  std::ostringstream summary;
  summary << "model: " << model.name() << " (" << model.kind() << ")\n";
  summary << "description: " << model.describe() << "\n";
  summary << "dimension: " << model.dimension() << ", truncation: " << model.truncation() << "\n";
  summary << "command: " << command_name(config.command) << ", seed: " << config.seed << "\n";

  if (config.load_validation_failure && config.command != Command::Validate) {
    out.write("load_validation.txt", config.load_validation_failure->to_string());
    summary << "== load-time validation ==\n" << config.load_validation_failure->to_string();
    result.findings += 1;
  }

  const bool all = config.command == Command::Report;
  if (all || config.command == Command::Validate) validate_section(model, config, out, result, summary);
  if (all || config.command == Command::Ranks) ranks_section(model, config, out, summary);
  if (all || config.command == Command::Cond3) cond3_section(model, config, out, result, summary);
  if (all || config.command == Command::Okounkov) okounkov_section(model, instance_flag, config, out, result, summary);
  if (all || config.command == Command::Divisor) divisor_section(model, config, out, result, summary);

  summary << "findings: " << result.findings << "\n";
  result.summary = summary.str();
  out.write("summary.txt", result.summary);
  return result;
}

}  // namespace okbody
