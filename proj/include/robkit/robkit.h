// Copyright 2026 The robkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to robkit: generalized robustness, multi-copy witnesses and
 * channel-discrimination advantage for finite-dimensional quantum states.
 *
 * All objects are opaque handles created by the library and released with
 * the matching *_destroy function. Every call that can fail returns an
 * rk_status; the message of the most recent failure on the calling thread is
 * available from rk_last_error(). */

#ifndef ROBKIT_ROBKIT_H_
#define ROBKIT_ROBKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#else
#define RK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
  RK_OK = 0,
  RK_ERR_INPUT = 1,          /* malformed input, dimension mismatch, size cap */
  RK_ERR_NOT_APPLICABLE = 2, /* free state or infinite robustness */
  RK_ERR_INVALID_REGIME = 3, /* witness parameter at or above the robustness */
  RK_ERR_VERIFY_FAILED = 4,  /* at least one acceptance check failed */
  RK_ERR_NUMERIC = 5,        /* solver or certificate quality failure */
  RK_ERR_INTERNAL = 6
} rk_status;

typedef struct rk_state rk_state;
typedef struct rk_freeset rk_freeset;
typedef struct rk_result rk_result;

typedef struct rk_options {
  uint64_t seed;  /* sampling seed (default 1) */
  double tol;     /* NaN keeps defaults; robustness bisection width, or the
                     override for every verification tolerance */
  int cap_dim;    /* largest accepted dimension (default 4) */
  int n_flags;    /* N for the worst-case advantage ensemble (default 10000) */
  double s;       /* witness parameter; NaN selects 0.9 R */
  int n_samples;  /* free-state samples (default 1000) */
} rk_options;

RK_API const char* rk_version(void);
/* Thread-local; valid until the next failing call on the same thread. */
RK_API const char* rk_last_error(void);
RK_API void rk_options_init(rk_options* opts);

/* States: the matrix form {"d","re","im"} or the Bloch form {"d","x"}.
 * `source` names the input in diagnostics and may be NULL. */
RK_API rk_status rk_state_parse(const char* json, const char* source, rk_state** out);
/* Row-major d x d real and imaginary parts; `im` may be NULL. */
RK_API rk_status rk_state_from_matrix(int d, const double* re, const double* im,
                                      rk_state** out);
RK_API int rk_state_dim(const rk_state* state);
RK_API void rk_state_destroy(rk_state* state);

RK_API rk_status rk_freeset_parse(const char* json, const char* source, rk_freeset** out);
/* States diagonal in the computational basis of dimension d. */
RK_API rk_status rk_freeset_incoherent(int d, rk_freeset** out);
RK_API int rk_freeset_dim(const rk_freeset* set);
RK_API size_t rk_freeset_size(const rk_freeset* set);
RK_API void rk_freeset_destroy(rk_freeset* set);

/* Each command stores its report in *out whenever one exists, including the
 * RK_ERR_NOT_APPLICABLE, RK_ERR_INVALID_REGIME and RK_ERR_VERIFY_FAILED
 * outcomes; *out is NULL otherwise. `opts` may be NULL for defaults. */
RK_API rk_status rk_robustness(const rk_state* state, const rk_freeset* set,
                               const rk_options* opts, rk_result** out);
RK_API rk_status rk_witness(const rk_state* state, const rk_freeset* set,
                            const rk_options* opts, rk_result** out);
/* mode: "worst-case" or "qualitative". */
RK_API rk_status rk_discriminate(const rk_state* state, const rk_freeset* set,
                                 const char* mode, const rk_options* opts,
                                 rk_result** out);
/* suite: "all", "byrd", "witness", "duality" or "theorems". */
RK_API rk_status rk_verify(const char* suite, const rk_options* opts, rk_result** out);

RK_API rk_status rk_result_status(const rk_result* result);
/* Headline number: robustness, witness margin, advantage, or failed checks. */
RK_API double rk_result_value(const rk_result* result);
RK_API const char* rk_result_json(const rk_result* result);
/* Additional files (family JSON, CSV, SVG) keyed by file name. */
RK_API size_t rk_result_artifact_count(const rk_result* result);
RK_API const char* rk_result_artifact_name(const rk_result* result, size_t index);
RK_API const char* rk_result_artifact_data(const rk_result* result, size_t index);
RK_API void rk_result_destroy(rk_result* result);

#ifdef __cplusplus
}
#endif

#endif /* ROBKIT_ROBKIT_H_ */
