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

// Small dense complex kernel. Dimensions in this library stay below ~16, so
// everything is plain loops over std::vector storage.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace limfb {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Row-major dense complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);

    static CMatrix identity(std::size_t n);
    static CMatrix from_columns(std::span<const CVector> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    CVector column(std::size_t c) const;
    CVector row(std::size_t r) const;
    void set_column(std::size_t c, std::span<const cplx> values);

    std::span<const cplx> data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// a^H b. Throws dimension_mismatch on unequal lengths.
cplx inner(std::span<const cplx> a, std::span<const cplx> b);

double norm_sq(std::span<const cplx> x) noexcept;
double norm(std::span<const cplx> x) noexcept;

/// x / ||x||. Throws degenerate_channel for a zero vector.
CVector normalized(std::span<const cplx> x);

CVector multiply(const CMatrix& a, std::span<const cplx> x);
CMatrix multiply(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Thin QR factorisation from Gram-Schmidt: input = q * r with r upper
/// triangular and positive real on the diagonal.
struct QrFactors {
    CMatrix q;
    CMatrix r;
    double pivot_ratio = 1.0; ///< max/min diagonal of r; crude condition estimate
};

/// Modified Gram-Schmidt with one re-orthogonalisation pass.
/// Throws degenerate_channel when a pivot norm drops below 1e-12.
QrFactors qr_decompose(const CMatrix& cols);

/// Orthonormal basis for the column span, column k spanning the first k+1 inputs.
CMatrix gram_schmidt(const CMatrix& cols);

/// Least-squares solution of h v = s, i.e. (h^H h)^{-1} h^H s.
CVector normal_solve(const CMatrix& h, std::span<const cplx> s);

inline constexpr double condition_threshold = 1e8;

/// Square inverse. Throws IllConditionedError when the Gram-Schmidt pivot
/// ratio of `a` exceeds condition_threshold.
CMatrix invert_square(const CMatrix& a);

} // namespace limfb
