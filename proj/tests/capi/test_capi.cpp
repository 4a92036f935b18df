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
// Exercises the shared library strictly through its C interface.

#include "limfb/limfb.h"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

std::string take(char* s)
{
    std::string out(s);
    limfb_string_free(s);
    return out;
}

limfb_config* parse(const char* text)
{
    limfb_config* cfg = nullptr;
    REQUIRE(limfb_config_parse(text, "capi.cfg", &cfg) == LIMFB_OK);
    return cfg;
}

} // namespace

TEST_SUITE("capi")
{
    TEST_CASE("version and status names")
    {
        CHECK(std::string(limfb_version()) == "1.0.0");
        CHECK(std::string(limfb_status_name(LIMFB_OK)) == "ok");
        CHECK(std::string(limfb_status_name(LIMFB_ERR_CONFIG)) == "configuration error");
        CHECK(std::string(limfb_status_name(static_cast<limfb_status>(12345))) == "unknown status");
    }

    TEST_CASE("analysis entry points")
    {
        double v = 0.0;
        REQUIRE(limfb_bits_required(10, 1, 10.0, 1.0, &v) == LIMFB_OK);
        CHECK(v == doctest::Approx(30.0));
        REQUIRE(limfb_delta_a(6, 2, &v) == LIMFB_OK);
        CHECK(v == doctest::Approx(0.28854).epsilon(1e-4));
        REQUIRE(limfb_quant_error_approx(8, 4, 2, &v) == LIMFB_OK);
        CHECK(v == doctest::Approx(0.036084).epsilon(1e-4));
        REQUIRE(limfb_feedback_savings(6, 2, 20.0, &v) == LIMFB_OK);
        CHECK(v == doctest::Approx(7.5459).epsilon(1e-4));
        REQUIRE(limfb_rate_gap_bound(10.0, 10.0, 4, 1, &v) == LIMFB_OK);
        CHECK(v == doctest::Approx(std::log2(1.0 + 10.0 * std::pow(2.0, -10.0 / 3.0))));

        CHECK(limfb_bits_required(4, 3, 10.0, 1.0, &v) == LIMFB_ERR_INFEASIBLE);
        CHECK(std::string(limfb_last_error()).find("bps/Hz") != std::string::npos);
        CHECK(limfb_delta_a(4, 4, &v) == LIMFB_ERR_INVALID_ARGUMENT);
        CHECK(limfb_delta_a(4, 2, nullptr) == LIMFB_ERR_INVALID_ARGUMENT);
        // A success clears the previous message.
        REQUIRE(limfb_delta_a(4, 2, &v) == LIMFB_OK);
        CHECK(std::string(limfb_last_error()).empty());
    }

    TEST_CASE("scaling table through the C interface")
    {
        const int ns[] = {1, 2, 3};
        const double ps[] = {10.0};
        char* csv = nullptr;
        REQUIRE(limfb_scaling_table_csv(10, ns, 3, 1.0, ps, 1, &csv) == LIMFB_OK);
        const std::string text = take(csv);
        CHECK(text.find("10,1,1,10,30,30,30,0,0,ok") != std::string::npos);
        CHECK(text.find("10,2,1,10,25.00601643,26,25,") != std::string::npos);
        CHECK(limfb_scaling_table_csv(10, nullptr, 3, 1.0, ps, 1, &csv) == LIMFB_ERR_INVALID_ARGUMENT);
    }

    TEST_CASE("codebook handles")
    {
        limfb_codebook* cb = nullptr;
        REQUIRE(limfb_codebook_generate(1, 0, 0, 3, 4, &cb) == LIMFB_OK);
        CHECK(limfb_codebook_size(cb) == 8);
        CHECK(limfb_codebook_dim(cb) == 4);
        CHECK(limfb_codebook_bits(cb) == 3);
        double w[8];
        REQUIRE(limfb_codebook_vector(cb, 7, w) == LIMFB_OK);
        double n2 = 0.0;
        for (double x : w)
            n2 += x * x;
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(limfb_codebook_vector(cb, 8, w) == LIMFB_ERR_INVALID_ARGUMENT);
        limfb_codebook_free(cb);
        limfb_codebook_free(nullptr);

        CHECK(limfb_codebook_generate(1, 0, 0, 30, 4, &cb) == LIMFB_ERR_CAPACITY);
        const double three[] = {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0};
        CHECK(limfb_codebook_from_vectors(three, 3, 2, &cb) == LIMFB_ERR_INVALID_ARGUMENT);
    }

    TEST_CASE("quantisation handles")
    {
        // Codebook {e1, e2} in C^2; channel (0.8, 0.6).
        const double vecs[] = {1, 0, 0, 0, 0, 0, 1, 0};
        limfb_codebook* cb = nullptr;
        REQUIRE(limfb_codebook_from_vectors(vecs, 2, 2, &cb) == LIMFB_OK);
        const double h[] = {0.8, 0.0, 0.6, 0.0};
        limfb_quantization* q = nullptr;
        REQUIRE(limfb_quantize_single(h, 2, cb, &q) == LIMFB_OK);
        CHECK(limfb_quantization_index(q) == 0);
        CHECK(limfb_quantization_cos_sq(q) == doctest::Approx(0.64));
        CHECK(limfb_quantization_sin_sq(q) == doctest::Approx(0.36));
        CHECK(limfb_quantization_eff_norm_sq(q) == doctest::Approx(1.0));
        CHECK(limfb_quantization_length(q, LIMFB_VEC_GAMMA) == 1);
        double buf[4];
        REQUIRE(limfb_quantization_copy(q, LIMFB_VEC_Q_HAT, buf, 4) == LIMFB_OK);
        CHECK(buf[0] == 1.0);
        CHECK(buf[2] == 0.0);
        CHECK(limfb_quantization_copy(q, LIMFB_VEC_Q_HAT, buf, 3) == LIMFB_ERR_INVALID_ARGUMENT);
        limfb_quantization_free(q);

        // Square channel: column-major identity is row-major identity.
        const double eye[] = {1, 0, 0, 0, 0, 0, 1, 0};
        REQUIRE(limfb_quantize_effective(eye, 2, 2, cb, &q) == LIMFB_OK);
        CHECK(limfb_quantization_sin_sq(q) < 1e-12);
        CHECK(limfb_quantization_length(q, LIMFB_VEC_GAMMA) == 2);
        CHECK(limfb_quantization_length(q, LIMFB_VEC_H_EFF) == 2);
        limfb_quantization_free(q);

        // Row-major 2 x 1 channel along e2 picks codeword 1.
        const double col[] = {0, 0, 0, 2};
        REQUIRE(limfb_quantize_effective(col, 2, 1, cb, &q) == LIMFB_OK);
        CHECK(limfb_quantization_index(q) == 1);
        CHECK(limfb_quantization_eff_norm_sq(q) == doctest::Approx(4.0));
        limfb_quantization_free(q);

        const double zero[] = {0, 0, 0, 0};
        CHECK(limfb_quantize_single(zero, 2, cb, &q) == LIMFB_ERR_DEGENERATE);
        CHECK(limfb_quantize_effective(h, 3, 1, cb, &q) == LIMFB_ERR_DIMENSION);
        limfb_codebook_free(cb);
    }

    TEST_CASE("config handles")
    {
        limfb_config* cfg = nullptr;
        CHECK(limfb_config_parse("m = 4\nwhat = 1\n", "x.cfg", &cfg) == LIMFB_ERR_CONFIG);
        CHECK(std::string(limfb_last_error()).rfind("x.cfg:2:", 0) == 0);
        CHECK(limfb_config_load("/nonexistent/dir/x.cfg", &cfg) == LIMFB_ERR_IO);

        cfg = parse("m = 4\nbits = 4\n");
        CHECK(limfb_config_has_seed(cfg) == 0);
        REQUIRE(limfb_config_set_seed(cfg, 77) == LIMFB_OK);
        CHECK(limfb_config_has_seed(cfg) == 1);
        CHECK(limfb_config_seed(cfg) == 77);
        CHECK(limfb_config_set_trials(cfg, 0) == LIMFB_ERR_CONFIG);
        CHECK(limfb_config_set_samples(cfg, 10) == LIMFB_ERR_CONFIG);
        REQUIRE(limfb_config_set_trials(cfg, 5) == LIMFB_OK);
        char* json = nullptr;
        REQUIRE(limfb_config_to_json(cfg, &json) == LIMFB_OK);
        const std::string text = take(json);
        CHECK(text.find("\"seed\":77") != std::string::npos);
        CHECK(text.find("\"trials\":5") != std::string::npos);
        limfb_config_free(cfg);
    }

    TEST_CASE("sweep handles are deterministic across threads")
    {
        limfb_config* cfg = parse("m = 3\nn_rx = 1, 2\nsnr_db = 0, 10\nbits = 4\ntrials = 50\n");
        limfb_sweep* s = nullptr;
        CHECK(limfb_sweep_run(cfg, 1, &s) == LIMFB_ERR_CONFIG); // seed unresolved
        limfb_config_set_seed(cfg, 5);
        limfb_sweep* a = nullptr;
        limfb_sweep* b = nullptr;
        REQUIRE(limfb_sweep_run(cfg, 1, &a) == LIMFB_OK);
        REQUIRE(limfb_sweep_run(cfg, 4, &b) == LIMFB_OK);
        CHECK(std::string(limfb_sweep_csv(a)) == limfb_sweep_csv(b));
        CHECK(std::string(limfb_sweep_manifest(a)) == limfb_sweep_manifest(b));
        CHECK(std::string(limfb_sweep_csv(a)).rfind(
                  "snr_db,n_rx,bits,rate_fb_mean,rate_fb_ci,rate_zf_mean,rate_zf_ci,gap,dropped\n", 0) == 0);
        CHECK(limfb_sweep_warning_count(a) == 0);
        CHECK(std::string(limfb_sweep_warning(a, 0)).empty());
        limfb_sweep_free(a);
        limfb_sweep_free(b);
        limfb_config_free(cfg);
    }

    TEST_CASE("validation handles")
    {
        limfb_config* cfg = parse("m = 4\nn_rx = 2\nbits = 5\nsamples = 20000\nseed = 3\n");
        limfb_validation* v = nullptr;
        REQUIRE(limfb_validate_run(cfg, 2, 0, &v) == LIMFB_OK);
        CHECK(limfb_validation_passed(v) == 1);
        CHECK(std::string(limfb_validation_json(v)).find("\"suites\"") != std::string::npos);
        limfb_validation_free(v);
        REQUIRE(limfb_validate_run(cfg, 1, 1, &v) == LIMFB_OK);
        CHECK(limfb_validation_passed(v) == 0);
        limfb_validation_free(v);
        limfb_config_free(cfg);
    }

    TEST_CASE("null handles are rejected")
    {
        limfb_sweep* s = nullptr;
        CHECK(limfb_sweep_run(nullptr, 1, &s) == LIMFB_ERR_INVALID_ARGUMENT);
        limfb_quantization* q = nullptr;
        const double h[] = {1, 0, 0, 0};
        CHECK(limfb_quantize_single(h, 2, nullptr, &q) == LIMFB_ERR_INVALID_ARGUMENT);
        CHECK(limfb_config_set_seed(nullptr, 1) == LIMFB_ERR_INVALID_ARGUMENT);
    }
}
