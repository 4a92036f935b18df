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
#include "limfb/rng.hpp"

#include "limfb/error.hpp"

#include <cmath>
#include <numbers>

namespace limfb {

namespace {

constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double unit_open(std::uint32_t hi, std::uint32_t lo) noexcept
{
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) noexcept
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += philox_w0;
            key[1] += philox_w1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(philox_m0, ctr[0], hi0, lo0);
        mulhilo(philox_m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, StreamId id) noexcept : seed_(seed), id_(id) {}

RngStream RngStream::derive(std::uint16_t user, StreamPurpose purpose) const noexcept
{
    return RngStream(seed_, StreamId{id_.trial, user, static_cast<std::uint16_t>(purpose)});
}

std::array<std::uint32_t, 4> RngStream::next_block() noexcept
{
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(position_),
        static_cast<std::uint32_t>(position_ >> 32),
        (static_cast<std::uint32_t>(id_.user) << 16) | id_.purpose,
        id_.trial,
    };
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    ++position_;
    return philox4x32(ctr, key);
}

double RngStream::uniform() noexcept
{
    const auto b = next_block();
    return unit_open(b[0], b[1]);
}

cplx RngStream::complex_normal() noexcept
{
    const auto b = next_block();
    const double u1 = unit_open(b[0], b[1]);
    const double u2 = unit_open(b[2], b[3]);
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

CVector sample_gaussian(RngStream& rng, std::size_t dim)
{
    if (dim == 0)
        fail(ErrorCode::invalid_argument, "sample_gaussian: dim must be >= 1");
    CVector out(dim);
    for (auto& v : out)
        v = rng.complex_normal();
    return out;
}

CMatrix sample_gaussian_matrix(RngStream& rng, std::size_t rows, std::size_t cols)
{
    CMatrix out(rows, cols);
    // Column-major draw order so column k is the k-th receive antenna's vector.
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r)
            out(r, c) = rng.complex_normal();
    return out;
}

CVector sample_isotropic_unit(RngStream& rng, std::size_t dim)
{
    CVector v = sample_gaussian(rng, dim);
    // A CN(0,I) draw is zero with probability 0; the loop only guards underflow.
    while (norm_sq(v) < 1e-300)
        v = sample_gaussian(rng, dim);
    return normalized(v);
}

} // namespace limfb
