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
#pragma once

#include "limfb/linalg.hpp"
#include "limfb/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace limfb {

inline constexpr int max_codebook_bits = 24;

/// Effective quantisation treats projections within this of the maximum as ties.
inline constexpr double quantization_tie_tolerance = 1e-12;

/// 2^B unit-norm M-vectors, stored contiguously. Immutable once built.
class Codebook {
public:
    /// Wraps explicit vectors; count must be a power of two >= 2 and each
    /// vector unit norm within 1e-12.
    static Codebook from_vectors(std::span<const CVector> vectors);

    int bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const cplx> vector(std::size_t index) const noexcept
    {
        return {entries_.data() + index * dim_, dim_};
    }

private:
    friend Codebook generate_codebook(RngStream& rng, int bits, std::size_t dim);
    Codebook(int bits, std::size_t dim, std::vector<cplx> entries);

    int bits_ = 0;
    std::size_t dim_ = 0;
    std::size_t size_ = 0;
    std::vector<cplx> entries_;
};

/// Random vector quantisation codebook: 2^B iid isotropic unit vectors.
Codebook generate_codebook(RngStream& rng, int bits, std::size_t dim);

struct QuantizationResult {
    std::size_t index = 0;
    CVector q_hat;       ///< chosen codebook vector
    double cos_sq = 0.0; ///< cos^2 of the angle between q_hat and h_eff
    double sin_sq = 1.0;
    CVector s_proj;      ///< unit projection of q_hat onto span(H)
    CVector gamma;       ///< unit-norm receive combiner, length N
    CVector h_eff;       ///< H * gamma
    double eff_norm_sq = 0.0;
};

/// Single-antenna quantisation: argmax_j |h^H w_j|, lowest index on ties.
QuantizationResult quantize_single(std::span<const cplx> h, const Codebook& cb);

/// Effective-channel quantisation for an M x N channel:
///   1. pick the codeword with the smallest angle to span(H),
///   2. project it onto span(H) and normalise (s_proj),
///   3. solve H v = s_proj; gamma = v / ||v||, h_eff = H gamma, ||h_eff||^2 = 1/||v||^2.
/// For N = 1 this reduces to quantize_single.
QuantizationResult quantize_effective(const CMatrix& h, const Codebook& cb);

/// Baseline: quantise each receive antenna with its own codebook and keep the
/// antenna with the largest cos^2. gamma selects that antenna.
QuantizationResult quantize_antenna_selection(const CMatrix& h, std::span<const Codebook> codebooks);

/// sin^2 of the angle between w and span(H): 1 - sum_k |w^H q_k|^2.
double quantization_error_of(const CMatrix& h, std::span<const cplx> w);

} // namespace limfb
