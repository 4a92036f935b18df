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
#include "limfb/limfb.h"

#include "limfb/analysis.hpp"
#include "limfb/commands.hpp"
#include "limfb/config.hpp"
#include "limfb/error.hpp"
#include "limfb/quantization.hpp"
#include "limfb/rng.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct limfb_codebook {
    limfb::Codebook book;
};

struct limfb_quantization {
    limfb::QuantizationResult result;
};

struct limfb_config {
    limfb::RunConfig cfg;
};

struct limfb_sweep {
    limfb::SweepOutput output;
};

struct limfb_validation {
    limfb::ValidateOutput output;
};

namespace {

thread_local std::string last_error;

limfb_status to_status(limfb::ErrorCode code)
{
    using limfb::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_argument: return LIMFB_ERR_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return LIMFB_ERR_DIMENSION;
    case ErrorCode::degenerate_channel: return LIMFB_ERR_DEGENERATE;
    case ErrorCode::ill_conditioned: return LIMFB_ERR_ILL_CONDITIONED;
    case ErrorCode::capacity: return LIMFB_ERR_CAPACITY;
    case ErrorCode::infeasible_target: return LIMFB_ERR_INFEASIBLE;
    case ErrorCode::config: return LIMFB_ERR_CONFIG;
    case ErrorCode::io: return LIMFB_ERR_IO;
    }
    return LIMFB_ERR_INTERNAL;
}

limfb_status set_error(limfb_status status, const char* what)
{
    last_error = what;
    return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
limfb_status guarded(F&& body)
{
    last_error.clear();
    try {
        body();
        return LIMFB_OK;
    } catch (const limfb::Error& e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(LIMFB_ERR_CAPACITY, "out of memory");
    } catch (const std::exception& e) {
        return set_error(LIMFB_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(LIMFB_ERR_INTERNAL, "unknown exception");
    }
}

void require(bool ok, const char* what)
{
    if (!ok)
        limfb::fail(limfb::ErrorCode::invalid_argument, what);
}

limfb::CVector read_complex(const double* data, std::size_t count)
{
    limfb::CVector out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = {data[2 * i], data[2 * i + 1]};
    return out;
}

char* duplicate(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const limfb::CVector* pick(const limfb::QuantizationResult& r, limfb_vector_kind which)
{
    switch (which) {
    case LIMFB_VEC_Q_HAT: return &r.q_hat;
    case LIMFB_VEC_S_PROJ: return &r.s_proj;
    case LIMFB_VEC_GAMMA: return &r.gamma;
    case LIMFB_VEC_H_EFF: return &r.h_eff;
    }
    return nullptr;
}

} // namespace

extern "C" {

const char* limfb_version(void)
{
    return limfb::tool_version;
}

const char* limfb_status_name(limfb_status status)
{
    switch (status) {
    case LIMFB_OK: return "ok";
    case LIMFB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LIMFB_ERR_DIMENSION: return "dimension mismatch";
    case LIMFB_ERR_DEGENERATE: return "degenerate channel";
    case LIMFB_ERR_ILL_CONDITIONED: return "ill-conditioned";
    case LIMFB_ERR_CAPACITY: return "capacity exceeded";
    case LIMFB_ERR_INFEASIBLE: return "infeasible target";
    case LIMFB_ERR_CONFIG: return "configuration error";
    case LIMFB_ERR_IO: return "I/O error";
    case LIMFB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* limfb_last_error(void)
{
    return last_error.c_str();
}

void limfb_string_free(char* s)
{
    std::free(s);
}

limfb_status limfb_delta_a(int m, int n, double* out)
{
    return guarded([&] {
        require(out, "out is null");
        *out = limfb::delta_a(m, n);
    });
}

limfb_status limfb_quant_error_approx(double bits, int m, int n, double* out)
{
    return guarded([&] {
        require(out, "out is null");
        *out = limfb::quant_error_approx(bits, m, n);
    });
}

limfb_status limfb_rate_gap_bound(double power, double bits, int m, int n, double* out)
{
    return guarded([&] {
        require(out, "out is null");
        *out = limfb::rate_gap_bound(power, bits, m, n);
    });
}

limfb_status limfb_bits_required(int m, int n, double p_db, double rate_gap, double* out)
{
    return guarded([&] {
        require(out, "out is null");
        *out = limfb::bits_required(limfb::ScalingInputs{m, n, p_db, rate_gap});
    });
}

limfb_status limfb_feedback_savings(int m, int n, double p_db, double* out)
{
    return guarded([&] {
        require(out, "out is null");
        *out = limfb::feedback_savings(m, n, p_db);
    });
}

limfb_status limfb_scaling_table_csv(int m, const int* n_list, size_t n_count, double rate_gap,
                                     const double* p_db_list, size_t p_count, char** out_csv)
{
    return guarded([&] {
        require(out_csv && n_list && p_db_list && n_count > 0 && p_count > 0, "empty or null scaling-table input");
        const std::vector<int> ns(n_list, n_list + n_count);
        const std::vector<double> ps(p_db_list, p_db_list + p_count);
        *out_csv = duplicate(limfb::scaling_table_csv(limfb::scaling_table(m, ns, rate_gap, ps)));
    });
}

limfb_status limfb_codebook_generate(uint64_t seed, uint32_t trial, uint16_t user, int bits, int dim,
                                     limfb_codebook** out)
{
    return guarded([&] {
        require(out, "out is null");
        require(dim >= 2, "dim must be >= 2");
        limfb::RngStream rng =
            limfb::RngStream(seed, limfb::StreamId{trial, 0, 0}).derive(user, limfb::StreamPurpose::codebook);
        *out = new limfb_codebook{limfb::generate_codebook(rng, bits, static_cast<std::size_t>(dim))};
    });
}

limfb_status limfb_codebook_from_vectors(const double* vectors, size_t count, int dim, limfb_codebook** out)
{
    return guarded([&] {
        require(out && vectors, "null argument");
        require(dim >= 1, "dim must be >= 1");
        std::vector<limfb::CVector> vs;
        vs.reserve(count);
        for (std::size_t j = 0; j < count; ++j)
            vs.push_back(read_complex(vectors + 2 * j * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)));
        *out = new limfb_codebook{limfb::Codebook::from_vectors(vs)};
    });
}

void limfb_codebook_free(limfb_codebook* cb)
{
    delete cb;
}

size_t limfb_codebook_size(const limfb_codebook* cb)
{
    return cb ? cb->book.size() : 0;
}

int limfb_codebook_dim(const limfb_codebook* cb)
{
    return cb ? static_cast<int>(cb->book.dim()) : 0;
}

int limfb_codebook_bits(const limfb_codebook* cb)
{
    return cb ? cb->book.bits() : 0;
}

limfb_status limfb_codebook_vector(const limfb_codebook* cb, size_t index, double* out)
{
    return guarded([&] {
        require(cb && out, "null argument");
        require(index < cb->book.size(), "codeword index out of range");
        const auto v = cb->book.vector(index);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[2 * i] = v[i].real();
            out[2 * i + 1] = v[i].imag();
        }
    });
}

limfb_status limfb_quantize_effective(const double* channel, int m, int n, const limfb_codebook* cb,
                                      limfb_quantization** out)
{
    return guarded([&] {
        require(channel && cb && out, "null argument");
        require(m >= 1 && n >= 1, "dimensions must be positive");
        limfb::CMatrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < n; ++c) {
                const std::size_t k = static_cast<std::size_t>(r * n + c);
                h(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = {channel[2 * k], channel[2 * k + 1]};
            }
        *out = new limfb_quantization{limfb::quantize_effective(h, cb->book)};
    });
}

limfb_status limfb_quantize_single(const double* h, int m, const limfb_codebook* cb, limfb_quantization** out)
{
    return guarded([&] {
        require(h && cb && out, "null argument");
        require(m >= 1, "dimension must be positive");
        *out = new limfb_quantization{limfb::quantize_single(read_complex(h, static_cast<std::size_t>(m)), cb->book)};
    });
}

void limfb_quantization_free(limfb_quantization* q)
{
    delete q;
}

size_t limfb_quantization_index(const limfb_quantization* q)
{
    return q ? q->result.index : 0;
}

double limfb_quantization_cos_sq(const limfb_quantization* q)
{
    return q ? q->result.cos_sq : 0.0;
}

double limfb_quantization_sin_sq(const limfb_quantization* q)
{
    return q ? q->result.sin_sq : 0.0;
}

double limfb_quantization_eff_norm_sq(const limfb_quantization* q)
{
    return q ? q->result.eff_norm_sq : 0.0;
}

size_t limfb_quantization_length(const limfb_quantization* q, limfb_vector_kind which)
{
    if (!q)
        return 0;
    const limfb::CVector* v = pick(q->result, which);
    return v ? v->size() : 0;
}

limfb_status limfb_quantization_copy(const limfb_quantization* q, limfb_vector_kind which, double* out,
                                     size_t capacity)
{
    return guarded([&] {
        require(q && out, "null argument");
        const limfb::CVector* v = pick(q->result, which);
        require(v != nullptr, "unknown vector kind");
        require(capacity >= 2 * v->size(), "output buffer too small");
        for (std::size_t i = 0; i < v->size(); ++i) {
            out[2 * i] = (*v)[i].real();
            out[2 * i + 1] = (*v)[i].imag();
        }
    });
}

limfb_status limfb_config_load(const char* path, limfb_config** out)
{
    return guarded([&] {
        require(path && out, "null argument");
        *out = new limfb_config{limfb::load_config(path)};
    });
}

limfb_status limfb_config_parse(const char* text, const char* source_name, limfb_config** out)
{
    return guarded([&] {
        require(text && out, "null argument");
        *out = new limfb_config{limfb::parse_config(text, source_name ? source_name : "<config>")};
    });
}

void limfb_config_free(limfb_config* cfg)
{
    delete cfg;
}

int limfb_config_has_seed(const limfb_config* cfg)
{
    return cfg && cfg->cfg.seed ? 1 : 0;
}

uint64_t limfb_config_seed(const limfb_config* cfg)
{
    return cfg && cfg->cfg.seed ? *cfg->cfg.seed : 0;
}

limfb_status limfb_config_set_seed(limfb_config* cfg, uint64_t seed)
{
    return guarded([&] {
        require(cfg, "null config");
        cfg->cfg.seed = seed;
    });
}

limfb_status limfb_config_set_trials(limfb_config* cfg, uint64_t trials)
{
    return guarded([&] {
        require(cfg, "null config");
        limfb::RunConfig next = cfg->cfg;
        next.trials = trials;
        limfb::validate_config(next);
        cfg->cfg = next;
    });
}

limfb_status limfb_config_set_samples(limfb_config* cfg, uint64_t samples)
{
    return guarded([&] {
        require(cfg, "null config");
        limfb::RunConfig next = cfg->cfg;
        next.samples = samples;
        limfb::validate_config(next);
        cfg->cfg = next;
    });
}

limfb_status limfb_config_to_json(const limfb_config* cfg, char** out_json)
{
    return guarded([&] {
        require(cfg && out_json, "null argument");
        *out_json = duplicate(limfb::config_to_json(cfg->cfg));
    });
}

limfb_status limfb_sweep_run(const limfb_config* cfg, unsigned threads, limfb_sweep** out)
{
    return guarded([&] {
        require(cfg && out, "null argument");
        *out = new limfb_sweep{limfb::run_sweep(cfg->cfg, threads)};
    });
}

void limfb_sweep_free(limfb_sweep* sweep)
{
    delete sweep;
}

const char* limfb_sweep_csv(const limfb_sweep* sweep)
{
    return sweep ? sweep->output.csv.c_str() : "";
}

const char* limfb_sweep_manifest(const limfb_sweep* sweep)
{
    return sweep ? sweep->output.manifest_json.c_str() : "";
}

size_t limfb_sweep_warning_count(const limfb_sweep* sweep)
{
    return sweep ? sweep->output.warnings.size() : 0;
}

const char* limfb_sweep_warning(const limfb_sweep* sweep, size_t index)
{
    if (!sweep || index >= sweep->output.warnings.size())
        return "";
    return sweep->output.warnings[index].c_str();
}

limfb_status limfb_validate_run(const limfb_config* cfg, unsigned threads, int wrong_reference,
                                limfb_validation** out)
{
    return guarded([&] {
        require(cfg && out, "null argument");
        *out = new limfb_validation{limfb::run_validate(cfg->cfg, threads, wrong_reference != 0)};
    });
}

void limfb_validation_free(limfb_validation* v)
{
    delete v;
}

int limfb_validation_passed(const limfb_validation* v)
{
    return v && v->output.all_pass ? 1 : 0;
}

const char* limfb_validation_json(const limfb_validation* v)
{
    return v ? v->output.report_json.c_str() : "";
}

} // extern "C"
