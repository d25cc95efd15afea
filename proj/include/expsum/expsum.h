// Copyright 2026 The expsum-lab Authors
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

#ifndef EXPSUM_EXPSUM_H_
#define EXPSUM_EXPSUM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(EXPSUM_BUILDING_LIBRARY)
#define EXPSUM_API __attribute__((visibility("default")))
#else
#define EXPSUM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum expsum_status {
  EXPSUM_OK = 0,
  EXPSUM_E_INVALID_ARGUMENT,
  EXPSUM_E_PARSE,
  EXPSUM_E_NOT_PRIME,
  EXPSUM_E_BAD_REDUCTION,
  EXPSUM_E_SMALL_CHARACTERISTIC,
  EXPSUM_E_DEGENERATE_DERIVATIVE,
  EXPSUM_E_EXTENSION_TOO_LARGE,
  EXPSUM_E_SMALL_PRIME,
  EXPSUM_E_BAD_CHARACTERISTIC,
  EXPSUM_E_DUPLICATE_VALUES,
  EXPSUM_E_NO_GOOD_PRIME,
  EXPSUM_E_PRIME_TOO_LARGE,
  EXPSUM_E_MISSING_TABLE,
  EXPSUM_E_NON_SQUAREFREE,
  EXPSUM_E_NOT_A_MEASURE,
  EXPSUM_E_INSUFFICIENT_SAMPLES,
  EXPSUM_E_CAP_EXCEEDED,
  EXPSUM_E_IO,
  EXPSUM_E_CACHE_CORRUPT,
  EXPSUM_E_INTERNAL,
} expsum_status;

typedef enum expsum_format { EXPSUM_FORMAT_CSV = 0, EXPSUM_FORMAT_JSON = 1 } expsum_format;

typedef enum expsum_group { EXPSUM_GROUP_SU = 0, EXPSUM_GROUP_USP = 1 } expsum_group;

typedef struct expsum_ctx expsum_ctx;
typedef struct expsum_poly expsum_poly;
typedef struct expsum_table expsum_table;
typedef struct expsum_report expsum_report;

EXPSUM_API const char* expsum_version(void);
EXPSUM_API const char* expsum_status_name(expsum_status s);
/* Message of the last failed call on this thread; "" after a success. */
EXPSUM_API const char* expsum_last_error(void);

EXPSUM_API int expsum_is_prime(uint64_t n);
/* Primes in [lo, hi], ascending. With out NULL only *count is set. */
EXPSUM_API expsum_status expsum_primes_in(uint64_t lo, uint64_t hi, uint64_t* out, size_t cap, size_t* count);

/* cache_dir NULL disables the on-disk cache. threads 0 means all cores. */
EXPSUM_API expsum_status expsum_ctx_new(const char* cache_dir, unsigned threads, uint64_t seed, expsum_ctx** out);
EXPSUM_API void expsum_ctx_free(expsum_ctx* ctx);
EXPSUM_API expsum_status expsum_ctx_cache_stats(const expsum_ctx* ctx, uint64_t* hits, uint64_t* misses,
                                                uint64_t* corrupt);

/* Coefficients constant term first, e.g. "[1, 1, 0, 1]" or "[\"1/2\", 0, 1]". */
EXPSUM_API expsum_status expsum_poly_parse(const char* json, expsum_poly** out);
EXPSUM_API void expsum_poly_free(expsum_poly* f);
EXPSUM_API int expsum_poly_degree(const expsum_poly* f);
/* 64 hex digits plus NUL. */
EXPSUM_API expsum_status expsum_poly_hash(const expsum_poly* f, char out[65]);

/* W(a;p) for all a. normalized != 0 gives the critical-shift normalization. */
EXPSUM_API expsum_status expsum_table_new(expsum_ctx* ctx, const expsum_poly* f, uint64_t p, int normalized,
                                          expsum_table** out);
EXPSUM_API void expsum_table_free(expsum_table* t);
EXPSUM_API uint64_t expsum_table_prime(const expsum_table* t);
EXPSUM_API double expsum_table_error_bound(const expsum_table* t);
/* Masked: 0 when p | a. */
EXPSUM_API expsum_status expsum_table_get(const expsum_table* t, int64_t a, double* re, double* im);
EXPSUM_API expsum_status expsum_sum_single(const expsum_poly* f, uint64_t p, uint64_t a, double* re, double* im);
/* W(a;q) for squarefree q through per-prime tables; 0 if gcd(a,q) > 1 or q
   is not squarefree. */
EXPSUM_API expsum_status expsum_twisted(expsum_ctx* ctx, const expsum_poly* f, int64_t a, uint64_t q, double* re,
                                        double* im);

/* Reports: text output plus a flag whose meaning depends on the producer
   (classify: definite verdict; oracle and cache verify: all checks passed;
   others: 1). */
EXPSUM_API const char* expsum_report_text(const expsum_report* r);
EXPSUM_API int expsum_report_flag(const expsum_report* r);
EXPSUM_API void expsum_report_free(expsum_report* r);

/* primes may be NULL/0 for the default certificate primes. Always JSON. */
EXPSUM_API expsum_status expsum_classify(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* primes,
                                         size_t nprimes, expsum_report** out);
/* exponents of |W|: 1 or positive even. Rejected primes become flagged rows. */
EXPSUM_API expsum_status expsum_moments(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* primes, size_t nprimes,
                                        const int* exponents, size_t nexp, expsum_format fmt, expsum_report** out);
EXPSUM_API expsum_status expsum_dichotomy(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* primes,
                                          size_t nprimes, double threshold, expsum_format fmt, expsum_report** out);
/* kappa <= 0 estimates it from primes below 2000. */
EXPSUM_API expsum_status expsum_shao(expsum_ctx* ctx, const expsum_poly* f, const uint64_t* xs, size_t nxs, int kappa,
                                     expsum_format fmt, expsum_report** out);
EXPSUM_API expsum_status expsum_cross(expsum_ctx* ctx, const expsum_poly* const* fs, size_t nf,
                                      const uint64_t* primes, size_t nprimes, const int* ks, size_t nk,
                                      expsum_format fmt, expsum_report** out);
EXPSUM_API expsum_status expsum_sweep(expsum_ctx* ctx, const expsum_poly* const* fs, size_t nf, int64_t a,
                                      const uint64_t* grid, size_t ngrid, const int* exponents, size_t nexp,
                                      uint64_t cap, expsum_format fmt, expsum_report** out);
/* samples 0 skips the Monte Carlo columns. */
EXPSUM_API expsum_status expsum_rmt(expsum_ctx* ctx, expsum_group family, int n, const int* ks, size_t nk,
                                    size_t samples, expsum_format fmt, expsum_report** out);
EXPSUM_API expsum_status expsum_oracle(expsum_ctx* ctx, const expsum_poly* f, uint64_t p, expsum_format fmt,
                                       expsum_report** out);

EXPSUM_API expsum_status expsum_cache_list(expsum_ctx* ctx, expsum_format fmt, expsum_report** out);
/* Empty prefix evicts everything. */
EXPSUM_API expsum_status expsum_cache_evict(expsum_ctx* ctx, const char* hash_prefix, size_t* removed);
EXPSUM_API expsum_status expsum_cache_verify(expsum_ctx* ctx, expsum_format fmt, expsum_report** out);

#ifdef __cplusplus
}
#endif

#endif  // EXPSUM_EXPSUM_H_
