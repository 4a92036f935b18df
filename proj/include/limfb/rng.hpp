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

// Counter-based random streams.
//
// Every draw is Philox4x32-10 evaluated at a 128-bit counter whose upper half
// is the stream id (trial, user, purpose) and whose lower half is the draw
// position; the 64-bit seed is the key. Two streams with the same seed and
// id therefore replay the same sequence on any thread, and streams with
// different ids never share counters.
//
// Complex normals use Box-Muller on one Philox block:
//   u1 = (top 53 bits of words 0,1 + 0.5) / 2^53,  u2 likewise from words 2,3
//   z  = sqrt(-ln u1) * (cos 2 pi u2 + j sin 2 pi u2)
// which gives CN(0,1): variance 1/2 per real dimension, E|z|^2 = 1.
// This mapping is part of the reproducibility contract and must not change.

#include "limfb/linalg.hpp"

#include <array>
#include <cstdint>

namespace limfb {

/// Raw Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) noexcept;

enum class StreamPurpose : std::uint16_t {
    channel = 1,
    codebook = 2,
    baseline_channel = 3,
    probe = 4,
    test = 5,
};

struct StreamId {
    std::uint32_t trial = 0;
    std::uint16_t user = 0;
    std::uint16_t purpose = 0;
};

class RngStream {
public:
    RngStream(std::uint64_t seed, StreamId id) noexcept;

    /// Same seed and trial, different user/purpose.
    RngStream derive(std::uint16_t user, StreamPurpose purpose) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    StreamId id() const noexcept { return id_; }

    std::array<std::uint32_t, 4> next_block() noexcept;
    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;
    /// Circularly-symmetric CN(0,1).
    cplx complex_normal() noexcept;

private:
    std::uint64_t seed_;
    StreamId id_;
    std::uint64_t position_ = 0;
};

/// iid CN(0,1) entries.
CVector sample_gaussian(RngStream& rng, std::size_t dim);

/// M x N matrix of iid CN(0,1) entries.
CMatrix sample_gaussian_matrix(RngStream& rng, std::size_t rows, std::size_t cols);

/// Uniform on the complex unit sphere, via a normalised Gaussian draw.
CVector sample_isotropic_unit(RngStream& rng, std::size_t dim);

} // namespace limfb
