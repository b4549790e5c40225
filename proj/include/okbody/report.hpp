// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Analysis runs that write deterministic CSV and text artifacts.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "okbody/algebra.hpp"
#include "okbody/valuation.hpp"

namespace okbody {

enum class Command { Validate, Ranks, Cond3, Okounkov, Divisor, Report };

/// Throws UsageError for unknown names.
Command parse_command(const std::string& name);
std::string command_name(Command c);

struct RunConfig {
  Command command = Command::Report;
  std::filesystem::path out_dir;
  std::optional<unsigned> M;
  std::optional<unsigned> N;
  unsigned r = 1;
  std::vector<unsigned> P;       // empty: 1..16 clamped to the truncation
  std::vector<Scalar> epsilons;  // empty: 1/2, 1/4, 1/8
  std::optional<unsigned> window;
  std::uint64_t seed = 1;
  unsigned samples = 32;
  bool expect_approximable = false;
  std::optional<Flag> flag;  // overrides the instance flag
  /// Load-time validation failure kept by a `validation = report` instance.
  std::optional<ValidationReport> load_validation_failure;
};

struct RunResult {
  /// Analysis-level failures (validation, Violated when approximability is
  /// expected, monotonicity, inclusion, boundedness, semigroup closure).
  int findings = 0;
  std::vector<std::string> files;  // relative to out_dir, in write order
  std::string summary;
};

/// Runs `config.command` on `model` and writes its artifacts into out_dir.
/// `instance_flag` is used when the config has no flag; otherwise the model default.
RunResult run_analysis(const GradedAlgebraModel& model, const std::optional<Flag>& instance_flag,
                       const RunConfig& config);

/// Fraction and 12-digit decimal cells for a rational column.
std::string csv_pair(const Scalar& q);

}  // namespace okbody
