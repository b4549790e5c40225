// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#pragma once

#include <stdexcept>
#include <string>

namespace okbody {

enum class ErrorKind {
  Model,
  Validation,
  Truncation,
  UndefinedValuation,
  FlagInapplicable,
  UnsupportedDimension,
  Parse,
  Usage,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ModelError : Error {
  explicit ModelError(const std::string& w) : Error(ErrorKind::Model, w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};
struct TruncationError : Error {
  explicit TruncationError(const std::string& w) : Error(ErrorKind::Truncation, w) {}
};
struct UndefinedValuation : Error {
  explicit UndefinedValuation(const std::string& w) : Error(ErrorKind::UndefinedValuation, w) {}
};
struct FlagInapplicable : Error {
  explicit FlagInapplicable(const std::string& w) : Error(ErrorKind::FlagInapplicable, w) {}
};
struct UnsupportedDimension : Error {
  explicit UnsupportedDimension(const std::string& w)
      : Error(ErrorKind::UnsupportedDimension, w) {}
};
struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error(ErrorKind::Usage, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

/// Syntax error in instance text; `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& w)
      : Error(ErrorKind::Parse, line > 0 ? "line " + std::to_string(line) + ": " + w : w),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace okbody
