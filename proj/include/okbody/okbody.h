/* SPDX-License-Identifier: Apache-2.0 */
/* Copyright 2026 The okbody Authors */

/* C interface to the okbody library. Models are opaque handles; every
 * function returns an okb_status and reports details via okb_last_error(). */

#ifndef OKBODY_OKBODY_H
#define OKBODY_OKBODY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OKB_API __declspec(dllexport)
#elif defined(__GNUC__)
#define OKB_API __attribute__((visibility("default")))
#else
#define OKB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum okb_status {
  OKB_OK = 0,
  OKB_ERR_MODEL = 1,
  OKB_ERR_VALIDATION = 2,
  OKB_ERR_TRUNCATION = 3,
  OKB_ERR_UNDEFINED_VALUATION = 4,
  OKB_ERR_FLAG_INAPPLICABLE = 5,
  OKB_ERR_UNSUPPORTED_DIMENSION = 6,
  OKB_ERR_PARSE = 7,
  OKB_ERR_USAGE = 8,
  OKB_ERR_IO = 9,
  OKB_ERR_NULL = 10,
  OKB_ERR_INTERNAL = 11
} okb_status;

typedef struct okb_model okb_model;

typedef enum okb_command {
  OKB_CMD_VALIDATE = 0,
  OKB_CMD_RANKS = 1,
  OKB_CMD_COND3 = 2,
  OKB_CMD_OKOUNKOV = 3,
  OKB_CMD_DIVISOR = 4,
  OKB_CMD_REPORT = 5
} okb_command;

/* Zero means "use the default" for M, N, window and samples. */
typedef struct okb_run_options {
  okb_command command;
  unsigned M;
  unsigned N;
  unsigned r;
  const unsigned* P;
  size_t P_len;
  const char* epsilons; /* comma-separated rationals, or NULL */
  unsigned window;
  uint64_t seed;
  unsigned samples;
  int expect_approximable;
  const char* flag; /* overrides the instance flag, or NULL */
} okb_run_options;

OKB_API const char* okb_version(void);

/* Message of the last failed call on this thread; "" when none. */
OKB_API const char* okb_last_error(void);

OKB_API const char* okb_status_name(okb_status status);

/* `base_dir` resolves relative imports and may be NULL. */
OKB_API okb_status okb_model_from_text(const char* text, const char* base_dir, int validate,
                                       okb_model** out);
OKB_API okb_status okb_model_from_file(const char* path, int validate, okb_model** out);
OKB_API void okb_model_free(okb_model* model);

OKB_API okb_status okb_model_dimension(const okb_model* model, size_t* out);
OKB_API okb_status okb_model_truncation(const okb_model* model, unsigned* out);
/* Writes at most `cap` bytes including the terminator; `*needed` gets the full length + 1. */
OKB_API okb_status okb_model_name(const okb_model* model, char* buf, size_t cap, size_t* needed);
OKB_API okb_status okb_model_kind(const okb_model* model, char* buf, size_t cap, size_t* needed);

/* dim B_m. */
OKB_API okb_status okb_graded_dim(const okb_model* model, unsigned m, size_t* out);
/* dim of the image of Sym^n B_p in B_{np}. */
OKB_API okb_status okb_power_dim(const okb_model* model, unsigned p, unsigned n, size_t* out);

OKB_API void okb_run_options_init(okb_run_options* options);

/* Writes artifacts into `out_dir`. `findings` receives the number of
 * analysis-level failures; `summary` (optional) receives a heap string to be
 * released with okb_string_free. */
OKB_API okb_status okb_run(const okb_model* model, const okb_run_options* options, const char* out_dir,
                           int* findings, char** summary);
OKB_API void okb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* OKBODY_OKBODY_H */
