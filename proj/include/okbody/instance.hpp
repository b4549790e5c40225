// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

// Line-oriented instance files.
//
//   # comment
//   import = other.inst          (makes the instances of another file available)
//   name = dyadic
//   kind = curve                 (curve | monomial | generated | rescale)
//   points = [1,2,3,4]
//   coeffs = geometric(1/2, 1/2)
//   ---                          (block separator; the last block is the instance)
//   name = sub
//   kind = generated
//   ambient = dyadic
//   generators = 1: 1; 2: 1/(x-1)
//
// Per kind:
//   curve      points = [q, ..., inf], coeffs = [a, ...] | geometric(s, r) |
//              inverse-square(c) | harmonic-squares(c) | harmonic(c),
//              convergent = true | false
//   monomial   slice = parity | polytope, vertices = [(0,0),(1,0),(0,1)]
//   generated  ambient = <name>, generators = <deg>: <expr>; ..., degree_bound = <n>
//   rescale    base = <name>, k = <n>
//   all        name, truncation, flag = point(q) | point(inf) | coordinate([1,2],[0,0]),
//              validation = strict | report   (report: load-time failures are kept, not thrown)

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "okbody/algebra.hpp"
#include "okbody/valuation.hpp"

namespace okbody {

struct InstanceDocument {
  ModelPtr model;
  std::optional<Flag> flag;
  std::map<std::string, ModelPtr> declared;  // every named instance, imports included
  std::map<std::string, std::optional<Flag>> flags;
  bool strict_validation = true;
  std::optional<ValidationReport> validation_failure;  // set only for validation = report
};

struct ParseOptions {
  bool validate = true;
  unsigned validation_samples = 24;
  std::uint64_t seed = 1;
  std::filesystem::path base_dir;  // for relative imports
};

/// Throws ParseError (with line) for syntax and model errors and
/// ValidationError (with the report) when validation fails.
InstanceDocument parse_instance(std::string_view text, const ParseOptions& options = {});
InstanceDocument load_instance(const std::filesystem::path& path, ParseOptions options = {});

/// Element expressions over `vars`: + - * / ^, parentheses, rationals and
/// variables. Divisors must be polynomials; each parenthesized sum becomes one
/// declared denominator factor.
RationalFunction parse_element(std::string_view text, const Variables& vars);

/// point(q), point(inf), coordinate([order],[center]) (1-based order).
Flag parse_flag(std::string_view text);

}  // namespace okbody
