// SPDX-License-Identifier: Apache-2.0
//
// limfb - limited-feedback MIMO broadcast channel simulation library
// Copyright (C) 2026 The limfb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
/*
 * C interface to limfb.
 *
 * All functions return limfb_status; on failure limfb_last_error() holds a
 * message for the calling thread until its next limfb call. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_free function (passing NULL is allowed). Strings returned by accessors
 * are owned by the handle; strings returned through char** out-parameters
 * are released with limfb_string_free.
 *
 * Complex data is passed as interleaved (re, im) doubles. Channel matrices
 * are row-major M x N, so column k holds receive antenna k.
 */
#ifndef LIMFB_H
#define LIMFB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LIMFB_BUILDING)
#    define LIMFB_API __declspec(dllexport)
#  else
#    define LIMFB_API __declspec(dllimport)
#  endif
#else
#  define LIMFB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum limfb_status {
    LIMFB_OK = 0,
    LIMFB_ERR_INVALID_ARGUMENT = 1,
    LIMFB_ERR_DIMENSION = 2,
    LIMFB_ERR_DEGENERATE = 3,
    LIMFB_ERR_ILL_CONDITIONED = 4,
    LIMFB_ERR_CAPACITY = 5,
    LIMFB_ERR_INFEASIBLE = 6,
    LIMFB_ERR_CONFIG = 7,
    LIMFB_ERR_IO = 8,
    LIMFB_ERR_INTERNAL = 99
} limfb_status;

LIMFB_API const char* limfb_version(void);
LIMFB_API const char* limfb_status_name(limfb_status status);
LIMFB_API const char* limfb_last_error(void);
LIMFB_API void limfb_string_free(char* s);

/* ---- closed-form analysis ---------------------------------------------- */

LIMFB_API limfb_status limfb_delta_a(int m, int n, double* out);
LIMFB_API limfb_status limfb_quant_error_approx(double bits, int m, int n, double* out);
/* power is linear */
LIMFB_API limfb_status limfb_rate_gap_bound(double power, double bits, int m, int n, double* out);
/* Real-valued bits; LIMFB_ERR_INFEASIBLE when rate_gap is below the delta_a floor. */
LIMFB_API limfb_status limfb_bits_required(int m, int n, double p_db, double rate_gap, double* out);
LIMFB_API limfb_status limfb_feedback_savings(int m, int n, double p_db, double* out);
/* CSV: m,n_rx,rate_gap,p_db,bits,bits_ceil,bits_rounded,savings_exact,savings_approx,status */
LIMFB_API limfb_status limfb_scaling_table_csv(int m, const int* n_list, size_t n_count, double rate_gap,
                                               const double* p_db_list, size_t p_count, char** out_csv);

/* ---- codebooks and quantisation ---------------------------------------- */

typedef struct limfb_codebook limfb_codebook;

/* 2^bits isotropic unit vectors drawn from stream (seed, {trial, user, codebook}). */
LIMFB_API limfb_status limfb_codebook_generate(uint64_t seed, uint32_t trial, uint16_t user, int bits, int dim,
                                               limfb_codebook** out);
/* count must be a power of two >= 2; vectors is count * dim interleaved complex values. */
LIMFB_API limfb_status limfb_codebook_from_vectors(const double* vectors, size_t count, int dim,
                                                   limfb_codebook** out);
LIMFB_API void limfb_codebook_free(limfb_codebook* cb);
LIMFB_API size_t limfb_codebook_size(const limfb_codebook* cb);
LIMFB_API int limfb_codebook_dim(const limfb_codebook* cb);
LIMFB_API int limfb_codebook_bits(const limfb_codebook* cb);
/* out receives 2 * dim doubles. */
LIMFB_API limfb_status limfb_codebook_vector(const limfb_codebook* cb, size_t index, double* out);

typedef struct limfb_quantization limfb_quantization;

typedef enum limfb_vector_kind {
    LIMFB_VEC_Q_HAT = 0,  /* chosen codeword, length M */
    LIMFB_VEC_S_PROJ = 1, /* unit projection onto span(H), length M */
    LIMFB_VEC_GAMMA = 2,  /* receive combiner, length N */
    LIMFB_VEC_H_EFF = 3   /* effective channel, length M */
} limfb_vector_kind;

LIMFB_API limfb_status limfb_quantize_effective(const double* channel, int m, int n, const limfb_codebook* cb,
                                                limfb_quantization** out);
LIMFB_API limfb_status limfb_quantize_single(const double* h, int m, const limfb_codebook* cb,
                                             limfb_quantization** out);
LIMFB_API void limfb_quantization_free(limfb_quantization* q);
LIMFB_API size_t limfb_quantization_index(const limfb_quantization* q);
LIMFB_API double limfb_quantization_cos_sq(const limfb_quantization* q);
LIMFB_API double limfb_quantization_sin_sq(const limfb_quantization* q);
LIMFB_API double limfb_quantization_eff_norm_sq(const limfb_quantization* q);
/* Number of complex entries in the given vector. */
LIMFB_API size_t limfb_quantization_length(const limfb_quantization* q, limfb_vector_kind which);
/* Copies the vector; capacity is in doubles and must be >= 2 * length. */
LIMFB_API limfb_status limfb_quantization_copy(const limfb_quantization* q, limfb_vector_kind which, double* out,
                                               size_t capacity);

/* ---- run configuration ------------------------------------------------- */

typedef struct limfb_config limfb_config;

/* Reads "key = value" config text, or a run manifest when path ends in .json. */
LIMFB_API limfb_status limfb_config_load(const char* path, limfb_config** out);
LIMFB_API limfb_status limfb_config_parse(const char* text, const char* source_name, limfb_config** out);
LIMFB_API void limfb_config_free(limfb_config* cfg);
LIMFB_API int limfb_config_has_seed(const limfb_config* cfg);
LIMFB_API uint64_t limfb_config_seed(const limfb_config* cfg);
LIMFB_API limfb_status limfb_config_set_seed(limfb_config* cfg, uint64_t seed);
LIMFB_API limfb_status limfb_config_set_trials(limfb_config* cfg, uint64_t trials);
LIMFB_API limfb_status limfb_config_set_samples(limfb_config* cfg, uint64_t samples);
LIMFB_API limfb_status limfb_config_to_json(const limfb_config* cfg, char** out_json);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct limfb_sweep limfb_sweep;

/* The config must carry a seed. threads only changes wall-clock time. */
LIMFB_API limfb_status limfb_sweep_run(const limfb_config* cfg, unsigned threads, limfb_sweep** out);
LIMFB_API void limfb_sweep_free(limfb_sweep* sweep);
/* header: snr_db,n_rx,bits,rate_fb_mean,rate_fb_ci,rate_zf_mean,rate_zf_ci,gap,dropped */
LIMFB_API const char* limfb_sweep_csv(const limfb_sweep* sweep);
LIMFB_API const char* limfb_sweep_manifest(const limfb_sweep* sweep);
LIMFB_API size_t limfb_sweep_warning_count(const limfb_sweep* sweep);
LIMFB_API const char* limfb_sweep_warning(const limfb_sweep* sweep, size_t index);

/* ---- validation suites ------------------------------------------------- */

typedef struct limfb_validation limfb_validation;

/* wrong_reference != 0 shifts the effective-norm reference shape by one. */
LIMFB_API limfb_status limfb_validate_run(const limfb_config* cfg, unsigned threads, int wrong_reference,
                                          limfb_validation** out);
LIMFB_API void limfb_validation_free(limfb_validation* v);
LIMFB_API int limfb_validation_passed(const limfb_validation* v);
LIMFB_API const char* limfb_validation_json(const limfb_validation* v);

#ifdef __cplusplus
}
#endif

#endif /* LIMFB_H */
