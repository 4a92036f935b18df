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
#include "limfb/error.hpp"
#include "limfb/quantization.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace limfb;
using oracle::basis;

namespace {

Codebook random_codebook(std::uint64_t seed, int bits, std::size_t dim)
{
    RngStream rng(seed, StreamId{0, 0, static_cast<std::uint16_t>(StreamPurpose::codebook)});
    return generate_codebook(rng, bits, dim);
}

std::vector<CVector> codebook_vectors(const Codebook& cb)
{
    std::vector<CVector> out;
    for (std::size_t j = 0; j < cb.size(); ++j)
        out.emplace_back(cb.vector(j).begin(), cb.vector(j).end());
    return out;
}

// |a^H b| / (|a| |b|)
double alignment(const CVector& a, const CVector& b)
{
    return std::abs(oracle::dot(a, b)) / std::sqrt(oracle::nrm2(a) * oracle::nrm2(b));
}

void check_result_invariants(const CMatrix& h, const QuantizationResult& r)
{
    CHECK(std::abs(r.sin_sq - (1.0 - r.cos_sq)) < 1e-12);
    CHECK(r.cos_sq >= 0.0);
    CHECK(r.cos_sq <= 1.0);
    CHECK(std::abs(oracle::nrm2(r.gamma) - 1.0) < 1e-12);
    const CVector hg = oracle::matvec(h, r.gamma);
    for (std::size_t i = 0; i < hg.size(); ++i)
        CHECK(std::abs(hg[i] - r.h_eff[i]) < 1e-10);
    CHECK(std::abs(r.eff_norm_sq - oracle::nrm2(r.h_eff)) < 1e-10 * (1.0 + r.eff_norm_sq));
    CHECK(std::abs(oracle::nrm2(r.s_proj) - 1.0) < 1e-12);
    CHECK(alignment(r.h_eff, r.s_proj) > 1.0 - 1e-8);
    // |q_hat^H h_eff| = ||h_eff|| cos(angle)
    const double lhs = std::abs(oracle::dot(r.q_hat, r.h_eff));
    CHECK(std::abs(lhs - std::sqrt(r.eff_norm_sq * r.cos_sq)) < 1e-8);
}

} // namespace

TEST_SUITE("quantization")
{
    TEST_CASE("generated codebooks have 2^B unit vectors and are reproducible")
    {
        const Codebook cb = random_codebook(1, 3, 4);
        CHECK(cb.size() == 8);
        CHECK(cb.bits() == 3);
        CHECK(cb.dim() == 4);
        for (std::size_t j = 0; j < cb.size(); ++j)
            CHECK(std::abs(norm(cb.vector(j)) - 1.0) < 1e-12);
        CHECK(codebook_vectors(random_codebook(1, 3, 4)) == codebook_vectors(cb));
        CHECK(codebook_vectors(random_codebook(2, 3, 4)) != codebook_vectors(cb));
    }

    TEST_CASE("codebook bit guard")
    {
        RngStream rng(1, StreamId{});
        for (int bad : {0, -1, max_codebook_bits + 1}) {
            try {
                (void)generate_codebook(rng, bad, 4);
                FAIL("expected an error");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::capacity);
            }
        }
        CHECK_THROWS_AS(generate_codebook(rng, 2, 1), Error);
    }

    TEST_CASE("pooled codebook entries are isotropic")
    {
        double acc = 0.0;
        std::size_t count = 0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const Codebook cb = random_codebook(1000 + s, 10, 4);
            for (std::size_t j = 0; j < cb.size(); ++j) {
                acc += std::norm(cb.vector(j)[0]);
                ++count;
            }
        }
        CHECK(std::abs(acc / static_cast<double>(count) - 0.25) < 0.01);
    }

    TEST_CASE("from_vectors validates size and norm")
    {
        CHECK_THROWS_AS(Codebook::from_vectors(std::vector<CVector>{basis(2, 0)}), Error);
        CHECK_THROWS_AS(Codebook::from_vectors(std::vector<CVector>{basis(3, 0), basis(3, 1), basis(3, 2)}), Error);
        CHECK_THROWS_AS(Codebook::from_vectors(std::vector<CVector>{basis(2, 0), CVector{2.0, 0.0}}), Error);
        CHECK_THROWS_AS(Codebook::from_vectors(std::vector<CVector>{basis(2, 0), basis(3, 1)}), Error);
        const Codebook cb = Codebook::from_vectors(std::vector<CVector>{basis(2, 0), basis(2, 1)});
        CHECK(cb.bits() == 1);
    }

    TEST_CASE("single-antenna quantisation finds an exact match")
    {
        const Codebook cb = random_codebook(3, 4, 4);
        CVector h(cb.vector(5).begin(), cb.vector(5).end());
        for (auto& x : h)
            x *= 2.0;
        const QuantizationResult r = quantize_single(h, cb);
        CHECK(r.index == 5);
        CHECK(r.sin_sq < 1e-12);
        CHECK(r.gamma == CVector{1.0});
        CHECK(r.h_eff == h);
    }

    TEST_CASE("single-antenna hand example")
    {
        const Codebook cb = Codebook::from_vectors(std::vector<CVector>{basis(2, 0), basis(2, 1)});
        const QuantizationResult r = quantize_single(CVector{0.8, 0.6}, cb);
        CHECK(r.index == 0);
        CHECK(std::abs(r.cos_sq - 0.64) < 1e-15);
    }

    TEST_CASE("single-antenna ties go to the lowest index")
    {
        const double s = std::sqrt(0.5);
        const Codebook cb = Codebook::from_vectors(std::vector<CVector>{basis(2, 0), basis(2, 1)});
        CHECK(quantize_single(CVector{s, s}, cb).index == 0);
    }

    TEST_CASE("single-antenna quantisation equals an exhaustive scan")
    {
        oracle::TestRng rng(4);
        for (int rep = 0; rep < 50; ++rep) {
            const Codebook cb = random_codebook(100 + static_cast<std::uint64_t>(rep), 8, 4);
            const CVector h = rng.vec(4);
            std::size_t best = 0;
            double best_val = -1.0;
            for (std::size_t j = 0; j < cb.size(); ++j) {
                const CVector w(cb.vector(j).begin(), cb.vector(j).end());
                const double v = std::norm(oracle::dot(h, w));
                if (v > best_val) {
                    best_val = v;
                    best = j;
                }
            }
            const QuantizationResult r = quantize_single(h, cb);
            CHECK(r.index == best);
            CHECK(std::abs(r.cos_sq - best_val / oracle::nrm2(h)) < 1e-12);
            check_result_invariants(CMatrix::from_columns(std::vector<CVector>{h}), r);
        }
    }

    TEST_CASE("single-antenna rejects zero and mismatched channels")
    {
        const Codebook cb = random_codebook(5, 2, 3);
        CHECK_THROWS_AS(quantize_single(CVector(3, 0.0), cb), Error);
        CHECK_THROWS_AS(quantize_single(CVector(4, 1.0), cb), Error);
    }

    TEST_CASE("effective quantisation with one antenna matches the single-antenna path")
    {
        oracle::TestRng rng(6);
        for (int rep = 0; rep < 30; ++rep) {
            const Codebook cb = random_codebook(200 + static_cast<std::uint64_t>(rep), 6, 4);
            const CVector h = rng.vec(4);
            const QuantizationResult a = quantize_single(h, cb);
            const QuantizationResult b = quantize_effective(CMatrix::from_columns(std::vector<CVector>{h}), cb);
            CHECK(a.index == b.index);
            CHECK(std::abs(a.cos_sq - b.cos_sq) < 1e-12);
            CHECK(alignment(a.h_eff, b.h_eff) > 1.0 - 1e-12);
            CHECK(std::abs(a.eff_norm_sq - b.eff_norm_sq) < 1e-10 * a.eff_norm_sq);
        }
    }

    TEST_CASE("effective quantisation picks a codeword planted in the span")
    {
        oracle::TestRng rng(7);
        const CMatrix h = rng.mat(4, 2);
        CVector planted = oracle::matvec(h, CVector{cplx(0.3, -1.0), cplx(0.7, 0.2)});
        planted = normalized(planted);
        std::vector<CVector> vecs = codebook_vectors(random_codebook(8, 4, 4));
        vecs[9] = planted;
        const Codebook cb = Codebook::from_vectors(vecs);
        const QuantizationResult r = quantize_effective(h, cb);
        CHECK(r.index == 9);
        CHECK(r.sin_sq < 1e-12);
        CHECK(alignment(r.h_eff, planted) > 1.0 - 1e-10);
        check_result_invariants(h, r);
    }

    TEST_CASE("effective quantisation equals a brute-force projector scan")
    {
        oracle::TestRng rng(8);
        for (int rep = 0; rep < 40; ++rep) {
            const CMatrix h = rng.mat(4, 2);
            const Codebook cb = random_codebook(300 + static_cast<std::uint64_t>(rep), 6, 4);
            const CMatrix p = oracle::projector(h);
            std::size_t best = 0;
            double best_val = -1.0;
            for (std::size_t j = 0; j < cb.size(); ++j) {
                const CVector w(cb.vector(j).begin(), cb.vector(j).end());
                const double v = oracle::nrm2(oracle::matvec(p, w));
                if (v > best_val) {
                    best_val = v;
                    best = j;
                }
            }
            const QuantizationResult r = quantize_effective(h, cb);
            CHECK(r.index == best);
            CHECK(std::abs(r.cos_sq - best_val) < 1e-12);
            CHECK(std::abs(r.eff_norm_sq - oracle::nrm2(oracle::matvec(h, r.gamma))) < 1e-10 * r.eff_norm_sq);
            // s_proj is the normalised projection of q_hat onto span(H).
            CHECK(alignment(r.s_proj, oracle::matvec(p, r.q_hat)) > 1.0 - 1e-10);
            check_result_invariants(h, r);
        }
    }

    TEST_CASE("effective quantisation invariants across shapes")
    {
        oracle::TestRng rng(9);
        for (std::size_t m = 2; m <= 7; ++m)
            for (std::size_t n = 1; n <= m; ++n) {
                const CMatrix h = rng.mat(m, n);
                const QuantizationResult r = quantize_effective(h, random_codebook(m * 10 + n, 5, m));
                check_result_invariants(h, r);
                if (n == m)
                    CHECK(r.sin_sq < 1e-10);
            }
    }

    TEST_CASE("a full-span channel selects codeword 0 regardless of rounding")
    {
        // Every codeword lies in the span, so all projections tie at 1.
        oracle::TestRng rng(19);
        for (int rep = 0; rep < 200; ++rep) {
            const CMatrix h = rng.mat(3, 3);
            const QuantizationResult r = quantize_effective(h, random_codebook(900 + static_cast<std::uint64_t>(rep), 6, 3));
            CHECK(r.index == 0);
        }
    }

    TEST_CASE("phase rotation of the codebook leaves the outcome unchanged")
    {
        oracle::TestRng rng(10);
        const CMatrix h = rng.mat(4, 2);
        const Codebook cb = random_codebook(11, 6, 4);
        std::vector<CVector> rotated = codebook_vectors(cb);
        for (std::size_t j = 0; j < rotated.size(); ++j) {
            const cplx ph = std::polar(1.0, 0.37 * static_cast<double>(j) + 1.1);
            for (auto& x : rotated[j])
                x *= ph;
        }
        const QuantizationResult a = quantize_effective(h, cb);
        const QuantizationResult b = quantize_effective(h, Codebook::from_vectors(rotated));
        CHECK(a.index == b.index);
        CHECK(std::abs(a.cos_sq - b.cos_sq) < 1e-12);
        CHECK(alignment(a.h_eff, b.h_eff) > 1.0 - 1e-10);
        CHECK(std::abs(a.eff_norm_sq - b.eff_norm_sq) < 1e-10 * a.eff_norm_sq);
    }

    TEST_CASE("enlarging the codebook never increases the error")
    {
        oracle::TestRng rng(12);
        for (int rep = 0; rep < 30; ++rep) {
            const CMatrix h = rng.mat(4, 2);
            const std::vector<CVector> big = codebook_vectors(random_codebook(400 + static_cast<std::uint64_t>(rep), 7, 4));
            const std::vector<CVector> small(big.begin(), big.begin() + 64);
            const double e_small = quantize_effective(h, Codebook::from_vectors(small)).sin_sq;
            const double e_big = quantize_effective(h, Codebook::from_vectors(big)).sin_sq;
            CHECK(e_big <= e_small + 1e-15);
        }
    }

    TEST_CASE("combining beats antenna selection with a shared codebook")
    {
        oracle::TestRng rng(13);
        for (int rep = 0; rep < 30; ++rep) {
            const CMatrix h = rng.mat(4, 3);
            const Codebook cb = random_codebook(500 + static_cast<std::uint64_t>(rep), 6, 4);
            const std::vector<Codebook> shared(3, cb);
            CHECK(quantize_effective(h, cb).cos_sq >= quantize_antenna_selection(h, shared).cos_sq - 1e-15);
        }
    }

    TEST_CASE("antenna selection with one antenna matches the single-antenna path")
    {
        oracle::TestRng rng(14);
        const CVector h = rng.vec(4);
        const Codebook cb = random_codebook(15, 5, 4);
        const QuantizationResult a = quantize_single(h, cb);
        const QuantizationResult b = quantize_antenna_selection(CMatrix::from_columns(std::vector<CVector>{h}),
                                                                std::vector<Codebook>{cb});
        CHECK(a.index == b.index);
        CHECK(a.cos_sq == b.cos_sq);
        CHECK(b.gamma == CVector{1.0});
    }

    TEST_CASE("antenna selection picks the exactly matched antenna")
    {
        oracle::TestRng rng(16);
        const Codebook cb0 = random_codebook(17, 4, 4);
        const Codebook cb1 = random_codebook(18, 4, 4);
        CVector h1(cb1.vector(3).begin(), cb1.vector(3).end());
        for (auto& x : h1)
            x *= cplx(0.0, 1.5);
        const CMatrix h = CMatrix::from_columns(std::vector<CVector>{rng.vec(4), h1});
        const QuantizationResult r = quantize_antenna_selection(h, std::vector<Codebook>{cb0, cb1});
        CHECK(r.index == 3);
        CHECK(r.sin_sq < 1e-12);
        CHECK(r.gamma == CVector{0.0, 1.0});
        CHECK(r.h_eff == h1);
        check_result_invariants(h, r);
        CHECK_THROWS_AS(quantize_antenna_selection(h, std::vector<Codebook>{cb0}), Error);
    }

    TEST_CASE("quantization_error_of edge cases")
    {
        const CMatrix h = CMatrix::from_columns(std::vector<CVector>{CVector{1.0, 1.0, 0.0}, CVector{0.0, 1.0, 0.0}});
        CHECK(quantization_error_of(h, CVector{0.6, -0.8, 0.0}) < 1e-15);
        CHECK(std::abs(quantization_error_of(h, CVector{0.0, 0.0, cplx(0.0, 1.0)}) - 1.0) < 1e-15);
        CHECK_THROWS_AS(quantization_error_of(h, CVector(3, 0.0)), Error);
        CHECK_THROWS_AS(quantization_error_of(h, CVector(2, 1.0)), Error);
    }

    TEST_CASE("quantization_error_of matches an explicit projector")
    {
        oracle::TestRng rng(19);
        for (int rep = 0; rep < 100; ++rep) {
            const std::size_t m = 3 + static_cast<std::size_t>(rep % 4);
            const std::size_t n = 1 + static_cast<std::size_t>(rep % 2);
            const CMatrix h = rng.mat(m, n);
            const CVector w = rng.unit(m);
            CHECK(std::abs(quantization_error_of(h, w) - (1.0 - oracle::cos_sq_to_span(h, w))) < 1e-12);
        }
    }

    TEST_CASE("rank-deficient channels are rejected")
    {
        const CMatrix h = CMatrix::from_columns(std::vector<CVector>{CVector{1.0, 0.0, 0.0}, CVector{2.0, 0.0, 0.0}});
        try {
            (void)quantize_effective(h, random_codebook(20, 2, 3));
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::degenerate_channel);
        }
    }
}
