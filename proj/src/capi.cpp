// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The okbody Authors

#include "okbody/okbody.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "okbody/algebra.hpp"
#include "okbody/error.hpp"
#include "okbody/instance.hpp"
#include "okbody/report.hpp"

struct okb_model {
  okbody::ModelPtr model;
  std::optional<okbody::Flag> flag;
  std::optional<okbody::ValidationReport> validation_failure;
};

namespace {

thread_local std::string last_error;

okb_status status_of(okbody::ErrorKind kind) {
  using okbody::ErrorKind;
  switch (kind) {
    case ErrorKind::Model:
      return OKB_ERR_MODEL;
    case ErrorKind::Validation:
      return OKB_ERR_VALIDATION;
    case ErrorKind::Truncation:
      return OKB_ERR_TRUNCATION;
    case ErrorKind::UndefinedValuation:
      return OKB_ERR_UNDEFINED_VALUATION;
    case ErrorKind::FlagInapplicable:
      return OKB_ERR_FLAG_INAPPLICABLE;
    case ErrorKind::UnsupportedDimension:
      return OKB_ERR_UNSUPPORTED_DIMENSION;
    case ErrorKind::Parse:
      return OKB_ERR_PARSE;
    case ErrorKind::Usage:
      return OKB_ERR_USAGE;
    case ErrorKind::Io:
      return OKB_ERR_IO;
  }
  return OKB_ERR_INTERNAL;
}

template <class F>
okb_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return OKB_OK;
  } catch (const okbody::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return OKB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return OKB_ERR_INTERNAL;
  }
}

okb_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return OKB_ERR_NULL;
}

okb_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  last_error.clear();
  return OKB_OK;
}

std::vector<okbody::Scalar> parse_epsilons(const std::string& text) {
  std::vector<okbody::Scalar> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, end - start);
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw okbody::UsageError("empty epsilon entry in '" + text + "'");
    try {
      out.push_back(okbody::parse_scalar(item.substr(a, b - a + 1)));
    } catch (const okbody::Error& e) {
      throw okbody::UsageError(std::string("bad epsilon: ") + e.what());
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

extern "C" {

const char* okb_version(void) { return "0.1.0"; }

const char* okb_last_error(void) { return last_error.c_str(); }

const char* okb_status_name(okb_status status) {
  switch (status) {
    case OKB_OK:
      return "ok";
    case OKB_ERR_MODEL:
      return "model error";
    case OKB_ERR_VALIDATION:
      return "validation error";
    case OKB_ERR_TRUNCATION:
      return "truncation error";
    case OKB_ERR_UNDEFINED_VALUATION:
      return "undefined valuation";
    case OKB_ERR_FLAG_INAPPLICABLE:
      return "flag inapplicable";
    case OKB_ERR_UNSUPPORTED_DIMENSION:
      return "unsupported dimension";
    case OKB_ERR_PARSE:
      return "parse error";
    case OKB_ERR_USAGE:
      return "usage error";
    case OKB_ERR_IO:
      return "io error";
    case OKB_ERR_NULL:
      return "null argument";
    case OKB_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

okb_status okb_model_from_text(const char* text, const char* base_dir, int validate, okb_model** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    okbody::ParseOptions opts;
    opts.validate = validate != 0;
    if (base_dir) opts.base_dir = base_dir;
    auto doc = okbody::parse_instance(text, opts);
    *out = new okb_model{doc.model, doc.flag, doc.validation_failure};
  });
}

okb_status okb_model_from_file(const char* path, int validate, okb_model** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    okbody::ParseOptions opts;
    opts.validate = validate != 0;
    auto doc = okbody::load_instance(path, opts);
    *out = new okb_model{doc.model, doc.flag, doc.validation_failure};
  });
}

void okb_model_free(okb_model* model) { delete model; }

okb_status okb_model_dimension(const okb_model* model, size_t* out) {
  if (!model) return null_argument("model");
  if (!out) return null_argument("out");
  *out = model->model->dimension();
  last_error.clear();
  return OKB_OK;
}

okb_status okb_model_truncation(const okb_model* model, unsigned* out) {
  if (!model) return null_argument("model");
  if (!out) return null_argument("out");
  *out = model->model->truncation();
  last_error.clear();
  return OKB_OK;
}

okb_status okb_model_name(const okb_model* model, char* buf, size_t cap, size_t* needed) {
  if (!model) return null_argument("model");
  return copy_out(model->model->name(), buf, cap, needed);
}

okb_status okb_model_kind(const okb_model* model, char* buf, size_t cap, size_t* needed) {
  if (!model) return null_argument("model");
  return copy_out(model->model->kind(), buf, cap, needed);
}

okb_status okb_graded_dim(const okb_model* model, unsigned m, size_t* out) {
  if (!model) return null_argument("model");
  if (!out) return null_argument("out");
  return guarded([&] { *out = model->model->graded_piece(m).dimension(); });
}

okb_status okb_power_dim(const okb_model* model, unsigned p, unsigned n, size_t* out) {
  if (!model) return null_argument("model");
  if (!out) return null_argument("out");
  return guarded([&] { *out = okbody::power_image(*model->model, p, n).dimension(); });
}

void okb_run_options_init(okb_run_options* options) {
  if (!options) return;
  *options = okb_run_options{};
  options->command = OKB_CMD_REPORT;
  options->r = 1;
  options->seed = 1;
}

okb_status okb_run(const okb_model* model, const okb_run_options* options, const char* out_dir, int* findings,
                   char** summary) {
  if (!model) return null_argument("model");
  if (!options) return null_argument("options");
  if (!out_dir) return null_argument("out_dir");
  if (summary) *summary = nullptr;
  return guarded([&] {
    okbody::RunConfig cfg;
    switch (options->command) {
      case OKB_CMD_VALIDATE:
        cfg.command = okbody::Command::Validate;
        break;
      case OKB_CMD_RANKS:
        cfg.command = okbody::Command::Ranks;
        break;
      case OKB_CMD_COND3:
        cfg.command = okbody::Command::Cond3;
        break;
      case OKB_CMD_OKOUNKOV:
        cfg.command = okbody::Command::Okounkov;
        break;
      case OKB_CMD_DIVISOR:
        cfg.command = okbody::Command::Divisor;
        break;
      case OKB_CMD_REPORT:
        cfg.command = okbody::Command::Report;
        break;
      default:
        throw okbody::UsageError("unknown command code " + std::to_string(static_cast<int>(options->command)));
    }
    cfg.out_dir = out_dir;
    if (options->M) cfg.M = options->M;
    if (options->N) cfg.N = options->N;
    cfg.r = options->r;
    if (options->P_len > 0) {
      if (!options->P) throw okbody::UsageError("P_len set without P");
      cfg.P.assign(options->P, options->P + options->P_len);
    }
    if (options->epsilons && *options->epsilons) cfg.epsilons = parse_epsilons(options->epsilons);
    if (options->window) cfg.window = options->window;
    cfg.seed = options->seed;
    if (options->samples) cfg.samples = options->samples;
    cfg.expect_approximable = options->expect_approximable != 0;
    if (options->flag && *options->flag) {
      try {
        cfg.flag = okbody::parse_flag(options->flag);
      } catch (const okbody::Error& e) {
        throw okbody::UsageError(std::string("bad --flag: ") + e.what());
      }
    }
    cfg.load_validation_failure = model->validation_failure;
    const auto result = okbody::run_analysis(*model->model, model->flag, cfg);
    if (findings) *findings = result.findings;
    if (summary) {
      char* s = static_cast<char*>(std::malloc(result.summary.size() + 1));
      if (!s) throw std::bad_alloc();
      std::memcpy(s, result.summary.c_str(), result.summary.size() + 1);
      *summary = s;
    }
  });
}

void okb_string_free(char* s) { std::free(s); }

}  // extern "C"
