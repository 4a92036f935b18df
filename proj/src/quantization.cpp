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
#include "limfb/quantization.hpp"

#include "limfb/error.hpp"

#include <cassert>
#include <algorithm>
#include <cmath>
#include <string>

namespace limfb {

namespace {

constexpr double unit_norm_tolerance = 1e-12;

bool is_power_of_two(std::size_t n)
{
    return n >= 2 && (n & (n - 1)) == 0;
}

int log2_exact(std::size_t n)
{
    int b = 0;
    while ((std::size_t{1} << b) < n)
        ++b;
    return b;
}

// Unit vector along the projection of q onto span(h); falls back to h itself
// when q is orthogonal to h.
CVector single_projection(std::span<const cplx> h, std::span<const cplx> q)
{
    const cplx c = inner(h, q);
    const double hn = norm(h);
    CVector out(h.begin(), h.end());
    const cplx scale = std::abs(c) > 0.0 ? c / (std::abs(c) * hn) : cplx(1.0 / hn);
    for (auto& v : out)
        v *= scale;
    return out;
}

} // namespace

Codebook::Codebook(int bits, std::size_t dim, std::vector<cplx> entries)
    : bits_(bits), dim_(dim), size_(std::size_t{1} << bits), entries_(std::move(entries))
{
}

Codebook Codebook::from_vectors(std::span<const CVector> vectors)
{
    if (!is_power_of_two(vectors.size()))
        fail(ErrorCode::invalid_argument,
             "codebook size " + std::to_string(vectors.size()) + " is not a power of two >= 2");
    const int bits = log2_exact(vectors.size());
    if (bits > max_codebook_bits)
        fail(ErrorCode::capacity, "codebook exceeds 2^" + std::to_string(max_codebook_bits) + " entries");
    const std::size_t dim = vectors.front().size();
    if (dim == 0)
        fail(ErrorCode::invalid_argument, "codebook vectors must be non-empty");
    std::vector<cplx> entries;
    entries.reserve(vectors.size() * dim);
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != dim)
            fail(ErrorCode::dimension_mismatch, "codebook vector " + std::to_string(j) + " has wrong length");
        if (std::abs(norm(vectors[j]) - 1.0) > unit_norm_tolerance)
            fail(ErrorCode::invalid_argument, "codebook vector " + std::to_string(j) + " is not unit norm");
        entries.insert(entries.end(), vectors[j].begin(), vectors[j].end());
    }
    return Codebook(bits, dim, std::move(entries));
}

Codebook generate_codebook(RngStream& rng, int bits, std::size_t dim)
{
    if (bits < 1 || bits > max_codebook_bits)
        fail(ErrorCode::capacity, "codebook bits " + std::to_string(bits) + " outside [1, " +
                                      std::to_string(max_codebook_bits) + "]");
    if (dim < 2)
        fail(ErrorCode::invalid_argument, "codebook dimension must be >= 2");
    const std::size_t size = std::size_t{1} << bits;
    std::vector<cplx> entries(size * dim);
    for (std::size_t j = 0; j < size; ++j) {
        const CVector w = sample_isotropic_unit(rng, dim);
        std::copy(w.begin(), w.end(), entries.begin() + static_cast<std::ptrdiff_t>(j * dim));
    }
    return Codebook(bits, dim, std::move(entries));
}

QuantizationResult quantize_single(std::span<const cplx> h, const Codebook& cb)
{
    if (h.size() != cb.dim())
        fail(ErrorCode::dimension_mismatch, "channel length differs from codebook dimension");
    const double h_norm_sq = norm_sq(h);
    if (!(h_norm_sq > 0.0))
        fail(ErrorCode::degenerate_channel, "cannot quantise a zero channel");

    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t j = 0; j < cb.size(); ++j) {
        const double gain = std::norm(inner(h, cb.vector(j)));
        if (gain > best_gain) {
            best_gain = gain;
            best = j;
        }
    }

    QuantizationResult out;
    out.index = best;
    const auto q = cb.vector(best);
    out.q_hat.assign(q.begin(), q.end());
    out.cos_sq = std::min(1.0, best_gain / h_norm_sq);
    out.sin_sq = 1.0 - out.cos_sq;
    out.s_proj = single_projection(h, q);
    out.gamma = {cplx(1.0)};
    out.h_eff.assign(h.begin(), h.end());
    out.eff_norm_sq = h_norm_sq;
    return out;
}

QuantizationResult quantize_effective(const CMatrix& h, const Codebook& cb)
{
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    if (m != cb.dim())
        fail(ErrorCode::dimension_mismatch, "channel rows differ from codebook dimension");
    if (n > m)
        fail(ErrorCode::dimension_mismatch, "receive antennas exceed transmit antennas");

    const CMatrix q = gram_schmidt(h);

    // Step 1: codeword with the largest projection onto span(H). Values within
    // rounding of the maximum are ties and go to the lowest index; otherwise
    // rounding noise decides among codewords that all lie in a full span,
    // and that choice correlates with H.
    std::vector<double> projs(cb.size());
    double max_proj = -1.0;
    for (std::size_t j = 0; j < cb.size(); ++j) {
        const auto w = cb.vector(j);
        double proj = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            cplx c = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                c += std::conj(q(i, k)) * w[i];
            proj += std::norm(c);
        }
        projs[j] = proj;
        max_proj = std::max(max_proj, proj);
    }
    std::size_t best = 0;
    while (projs[best] < max_proj - quantization_tie_tolerance)
        ++best;
    const double best_proj = projs[best];

    QuantizationResult out;
    out.index = best;
    const auto w = cb.vector(best);
    out.q_hat.assign(w.begin(), w.end());
    out.cos_sq = std::min(1.0, best_proj);
    out.sin_sq = 1.0 - out.cos_sq;

    // Step 2: s_proj = normalise(sum_k q_k (q_k^H q_hat)).
    CVector proj(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        cplx c = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            c += std::conj(q(i, k)) * w[i];
        for (std::size_t i = 0; i < m; ++i)
            proj[i] += c * q(i, k);
    }
    out.s_proj = normalized(proj);

    // Step 3: H v = s_proj, gamma = v / ||v||.
    const CVector v = normal_solve(h, out.s_proj);
    const double v_norm_sq = norm_sq(v);
    out.gamma = normalized(v);
    out.h_eff = multiply(h, out.gamma);
    out.eff_norm_sq = 1.0 / v_norm_sq;
    assert(std::abs(out.eff_norm_sq - norm_sq(out.h_eff)) <= 1e-8 * out.eff_norm_sq);
    return out;
}

QuantizationResult quantize_antenna_selection(const CMatrix& h, std::span<const Codebook> codebooks)
{
    const std::size_t n = h.cols();
    if (codebooks.size() != n)
        fail(ErrorCode::dimension_mismatch, "antenna selection needs one codebook per receive antenna");

    QuantizationResult best;
    std::size_t best_antenna = 0;
    for (std::size_t k = 0; k < n; ++k) {
        QuantizationResult r = quantize_single(h.column(k), codebooks[k]);
        if (k == 0 || r.cos_sq > best.cos_sq) {
            best = std::move(r);
            best_antenna = k;
        }
    }
    best.gamma.assign(n, 0.0);
    best.gamma[best_antenna] = 1.0;
    return best;
}

double quantization_error_of(const CMatrix& h, std::span<const cplx> w)
{
    if (w.size() != h.rows())
        fail(ErrorCode::dimension_mismatch, "vector length differs from channel rows");
    const double w_norm_sq = norm_sq(w);
    if (!(w_norm_sq > 0.0))
        fail(ErrorCode::invalid_argument, "quantization_error_of: zero vector");
    const CMatrix q = gram_schmidt(h);
    double captured = 0.0;
    for (std::size_t k = 0; k < q.cols(); ++k)
        captured += std::norm(inner(q.column(k), w));
    return std::max(0.0, 1.0 - captured / w_norm_sq);
}

} // namespace limfb
