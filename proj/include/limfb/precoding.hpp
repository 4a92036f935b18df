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

#include <span>
#include <vector>

namespace limfb {

/// Unit-norm zero-forcing beamformers; vectors[j] is orthogonal to every
/// quantisation except the j-th.
struct BeamformerSet {
    std::vector<CVector> vectors;
};

/// Normalised rows of [q_1 ... q_M]^{-1}, conjugated so that q_i^H v_j = 0
/// for i != j. Throws IllConditionedError for a near-singular stack.
BeamformerSet zfbf_vectors(std::span<const CVector> q_hats);

/// max over i != j of |q_i^H v_j|.
double max_leakage(std::span<const CVector> q_hats, const BeamformerSet& bf);

/// max over j of | ||v_j|| - 1 |.
double max_norm_deviation(const BeamformerSet& bf);

/// (P/M)|h^H v_i|^2 / (1 + sum_{j != i} (P/M)|h^H v_j|^2), with P linear.
double sinr(std::span<const cplx> h_eff, const BeamformerSet& bf, std::size_t user, double power, std::size_t m);

/// sum_i log2(1 + sinr_i).
double sum_rate(std::span<const double> sinrs);

/// Zero-forcing sum rate with the transmitter knowing the true single-antenna
/// channels exactly. Throws IllConditionedError for a near-singular channel.
double perfect_csit_rate(std::span<const CVector> channels, double power);

} // namespace limfb
