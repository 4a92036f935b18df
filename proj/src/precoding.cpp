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
#include "limfb/precoding.hpp"

#include "limfb/error.hpp"

#include <algorithm>
#include <cmath>

namespace limfb {

BeamformerSet zfbf_vectors(std::span<const CVector> q_hats)
{
    const std::size_t m = q_hats.size();
    if (m == 0)
        fail(ErrorCode::invalid_argument, "zfbf_vectors: no users");
    for (const auto& q : q_hats)
        if (q.size() != m)
            fail(ErrorCode::dimension_mismatch, "zfbf_vectors: need exactly M users of dimension M");

    const CMatrix stack = CMatrix::from_columns(q_hats);
    const CMatrix inv = invert_square(stack);

    // Row j of A^{-1} annihilates column i != j under the bilinear product,
    // so its conjugate is orthogonal to q_i under the Hermitian one.
    BeamformerSet bf;
    bf.vectors.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        CVector row = inv.row(j);
        for (auto& v : row)
            v = std::conj(v);
        bf.vectors.push_back(normalized(row));
    }
    return bf;
}

double max_leakage(std::span<const CVector> q_hats, const BeamformerSet& bf)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < q_hats.size(); ++i)
        for (std::size_t j = 0; j < bf.vectors.size(); ++j)
            if (i != j)
                worst = std::max(worst, std::abs(inner(q_hats[i], bf.vectors[j])));
    return worst;
}

double max_norm_deviation(const BeamformerSet& bf)
{
    double worst = 0.0;
    for (const auto& v : bf.vectors)
        worst = std::max(worst, std::abs(norm(v) - 1.0));
    return worst;
}

double sinr(std::span<const cplx> h_eff, const BeamformerSet& bf, std::size_t user, double power, std::size_t m)
{
    if (user >= bf.vectors.size())
        fail(ErrorCode::invalid_argument, "sinr: user index out of range");
    if (!(power > 0.0))
        fail(ErrorCode::invalid_argument, "sinr: power must be positive");
    const double per_user = power / static_cast<double>(m);
    double interference = 0.0;
    for (std::size_t j = 0; j < bf.vectors.size(); ++j)
        if (j != user)
            interference += per_user * std::norm(inner(h_eff, bf.vectors[j]));
    return per_user * std::norm(inner(h_eff, bf.vectors[user])) / (1.0 + interference);
}

double sum_rate(std::span<const double> sinrs)
{
    double total = 0.0;
    for (double s : sinrs) {
        if (s < 0.0)
            fail(ErrorCode::invalid_argument, "sum_rate: negative SINR");
        total += std::log2(1.0 + s);
    }
    return total;
}

double perfect_csit_rate(std::span<const CVector> channels, double power)
{
    const BeamformerSet bf = zfbf_vectors(channels);
    const std::size_t m = channels.size();
    std::vector<double> sinrs(m);
    for (std::size_t i = 0; i < m; ++i)
        sinrs[i] = sinr(channels[i], bf, i, power, m);
    return sum_rate(sinrs);
}

} // namespace limfb
