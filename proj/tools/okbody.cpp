// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// okbody command-line front end. Links only the C interface.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "okbody/okbody.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string instance;
  std::string out;
  unsigned M = 0;
  unsigned N = 0;
  unsigned r = 1;
  std::vector<unsigned> P;
  std::string epsilons;
  unsigned window = 0;
  std::uint64_t seed = 1;
  unsigned samples = 0;
  std::string flag;
  bool expect_approximable = false;
};

void add_options(CLI::App* sub, Options& o) {
  sub->add_option("--instance", o.instance, "Instance file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Output directory (default: $OKBODY_OUT_DIR or okbody-out)");
  sub->add_option("--M", o.M, "Top degree")->check(CLI::PositiveNumber);
  sub->add_option("--N", o.N, "Top multiple n")->check(CLI::PositiveNumber);
  sub->add_option("--r", o.r, "Shift for rank ratios")->check(CLI::PositiveNumber);
  sub->add_option("--P", o.P, "Comma-separated degrees p")->delimiter(',')->check(CLI::PositiveNumber);
  sub->add_option("--epsilons", o.epsilons, "Comma-separated epsilon schedule, e.g. 1/2,1/4");
  sub->add_option("--window", o.window, "Tail window size")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Seed for randomized checks");
  sub->add_option("--samples", o.samples, "Samples per validation check")->check(CLI::PositiveNumber);
  sub->add_option("--flag", o.flag, "point(q) | point(inf) | coordinate([order],[center])");
  sub->add_flag("--expect-approximable", o.expect_approximable, "Treat a Violated verdict as a finding");
}

std::string default_out_dir() {
  if (const char* env = std::getenv("OKBODY_OUT_DIR"); env && *env) return env;
  return "okbody-out";
}

int exit_for(okb_status status) {
  if (status == OKB_ERR_VALIDATION) return kExitFindings;
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded algebra diagnostics: ranks, condition (3), Okounkov bodies and limit divisors"};
  app.set_version_flag("--version", std::string(okb_version()));
  app.require_subcommand(1);

  Options opts;
  const std::vector<std::pair<const char*, okb_command>> commands = {
      {"validate", OKB_CMD_VALIDATE}, {"ranks", OKB_CMD_RANKS},       {"cond3", OKB_CMD_COND3},
      {"okounkov", OKB_CMD_OKOUNKOV}, {"divisor", OKB_CMD_DIVISOR},   {"report", OKB_CMD_REPORT}};
  const std::vector<std::string> help = {
      "Run the model property checks",
      "Volume sequence and rank ratios",
      "Condition (3) table and approximability verdict",
      "Okounkov semigroup, body and volume identity",
      "D_m table, limit estimate, monotonicity, inclusion and decay",
      "All analyses into one directory"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    add_options(sub, opts);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  okb_command command = OKB_CMD_REPORT;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) command = commands[i].second;
  if (opts.out.empty()) opts.out = default_out_dir();

  // The validate subcommand reports failures itself instead of aborting at load.
  const int validate_on_load = command == OKB_CMD_VALIDATE ? 0 : 1;
  okb_model* model = nullptr;
  okb_status st = okb_model_from_file(opts.instance.c_str(), validate_on_load, &model);
  if (st != OKB_OK) {
    std::cerr << "okbody: " << okb_status_name(st) << ": " << okb_last_error() << "\n";
    return exit_for(st);
  }

  okb_run_options ro;
  okb_run_options_init(&ro);
  ro.command = command;
  ro.M = opts.M;
  ro.N = opts.N;
  ro.r = opts.r;
  ro.P = opts.P.empty() ? nullptr : opts.P.data();
  ro.P_len = opts.P.size();
  ro.epsilons = opts.epsilons.empty() ? nullptr : opts.epsilons.c_str();
  ro.window = opts.window;
  ro.seed = opts.seed;
  ro.samples = opts.samples;
  ro.expect_approximable = opts.expect_approximable ? 1 : 0;
  ro.flag = opts.flag.empty() ? nullptr : opts.flag.c_str();

  int findings = 0;
  char* summary = nullptr;
  st = okb_run(model, &ro, opts.out.c_str(), &findings, &summary);
  okb_model_free(model);
  if (st != OKB_OK) {
    std::cerr << "okbody: " << okb_status_name(st) << ": " << okb_last_error() << "\n";
    return exit_for(st);
  }
  std::cout << summary;
  okb_string_free(summary);
  return findings > 0 ? kExitFindings : kExitOk;
}
