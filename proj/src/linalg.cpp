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
#include "limfb/linalg.hpp"

#include "limfb/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace limfb {

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols)
{
    if (rows == 0 || cols == 0)
        fail(ErrorCode::invalid_argument, "matrix dimensions must be at least 1");
}

CMatrix CMatrix::identity(std::size_t n)
{
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns)
{
    if (columns.empty())
        fail(ErrorCode::invalid_argument, "from_columns: no columns");
    CMatrix m(columns.front().size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        m.set_column(c, columns[c]);
    return m;
}

CVector CMatrix::column(std::size_t c) const
{
    CVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

CVector CMatrix::row(std::size_t r) const
{
    return CVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void CMatrix::set_column(std::size_t c, std::span<const cplx> values)
{
    if (values.size() != rows_)
        fail(ErrorCode::dimension_mismatch, "set_column: length " + std::to_string(values.size()) +
                                                " does not match " + std::to_string(rows_) + " rows");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = values[r];
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b)
{
    if (a.size() != b.size())
        fail(ErrorCode::dimension_mismatch, "inner: lengths " + std::to_string(a.size()) + " and " +
                                                std::to_string(b.size()));
    cplx acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        acc += std::conj(a[k]) * b[k];
    return acc;
}

double norm_sq(std::span<const cplx> x) noexcept
{
    double acc = 0.0;
    for (const auto& v : x)
        acc += std::norm(v);
    return acc;
}

double norm(std::span<const cplx> x) noexcept
{
    return std::sqrt(norm_sq(x));
}

CVector normalized(std::span<const cplx> x)
{
    const double n = norm(x);
    if (!(n > 0.0))
        fail(ErrorCode::degenerate_channel, "cannot normalise a zero vector");
    CVector out(x.begin(), x.end());
    for (auto& v : out)
        v /= n;
    return out;
}

CVector multiply(const CMatrix& a, std::span<const cplx> x)
{
    if (x.size() != a.cols())
        fail(ErrorCode::dimension_mismatch, "matrix-vector product: inner dimensions differ");
    CVector out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c)
            acc += a(r, c) * x[c];
        out[r] = acc;
    }
    return out;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b)
{
    if (a.cols() != b.rows())
        fail(ErrorCode::dimension_mismatch, "matrix product: inner dimensions differ");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx s = a(r, k);
            for (std::size_t c = 0; c < b.cols(); ++c)
                out(r, c) += s * b(k, c);
        }
    return out;
}

CMatrix adjoint(const CMatrix& a)
{
    CMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(c, r) = std::conj(a(r, c));
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorCode::dimension_mismatch, "max_abs_diff: shapes differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

QrFactors qr_decompose(const CMatrix& cols)
{
    const std::size_t m = cols.rows();
    const std::size_t n = cols.cols();
    if (n > m)
        fail(ErrorCode::dimension_mismatch, "Gram-Schmidt needs rows >= cols");

    QrFactors f{CMatrix(m, n), CMatrix(n, n), 1.0};
    double pivot_min = 0.0;
    double pivot_max = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        CVector v = cols.column(k);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < m; ++i)
                    proj += std::conj(f.q(i, j)) * v[i];
                for (std::size_t i = 0; i < m; ++i)
                    v[i] -= proj * f.q(i, j);
                f.r(j, k) += proj;
            }
        }
        const double pivot = norm(v);
        if (!(pivot >= 1e-12))
            fail(ErrorCode::degenerate_channel,
                 "rank-deficient columns: pivot " + std::to_string(pivot) + " at column " + std::to_string(k));
        f.r(k, k) = pivot;
        for (std::size_t i = 0; i < m; ++i)
            f.q(i, k) = v[i] / pivot;
        pivot_min = k == 0 ? pivot : std::min(pivot_min, pivot);
        pivot_max = std::max(pivot_max, pivot);
    }
    f.pivot_ratio = pivot_max / pivot_min;
    return f;
}

CMatrix gram_schmidt(const CMatrix& cols)
{
    return qr_decompose(cols).q;
}

namespace {

// Solves r x = y for upper-triangular r in place.
void back_substitute(const CMatrix& r, CVector& y)
{
    const std::size_t n = r.cols();
    for (std::size_t ii = n; ii-- > 0;) {
        cplx acc = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            acc -= r(ii, j) * y[j];
        y[ii] = acc / r(ii, ii);
    }
}

} // namespace

CVector normal_solve(const CMatrix& h, std::span<const cplx> s)
{
    if (s.size() != h.rows())
        fail(ErrorCode::dimension_mismatch, "normal_solve: right-hand side length differs from rows");
    // (H^H H)^{-1} H^H s == R^{-1} Q^H s for H = QR.
    const QrFactors f = qr_decompose(h);
    CVector y(h.cols());
    for (std::size_t k = 0; k < h.cols(); ++k) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < h.rows(); ++i)
            acc += std::conj(f.q(i, k)) * s[i];
        y[k] = acc;
    }
    back_substitute(f.r, y);
    return y;
}

CMatrix invert_square(const CMatrix& a)
{
    if (a.rows() != a.cols())
        fail(ErrorCode::dimension_mismatch, "invert_square: matrix is not square");
    const std::size_t n = a.rows();

    QrFactors f;
    try {
        f = qr_decompose(a);
    } catch (const Error&) {
        throw IllConditionedError(std::numeric_limits<double>::infinity(), "invert_square: singular matrix");
    }
    if (f.pivot_ratio > condition_threshold)
        throw IllConditionedError(f.pivot_ratio, "invert_square: condition estimate " +
                                                     std::to_string(f.pivot_ratio) + " exceeds threshold");

    // A^{-1} = R^{-1} Q^H, one column of Q^H at a time.
    CMatrix inv(n, n);
    CVector y(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t k = 0; k < n; ++k)
            y[k] = std::conj(f.q(c, k));
        back_substitute(f.r, y);
        inv.set_column(c, y);
    }
    return inv;
}

const char* error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::degenerate_channel: return "degenerate channel";
    case ErrorCode::ill_conditioned: return "ill-conditioned";
    case ErrorCode::capacity: return "capacity exceeded";
    case ErrorCode::infeasible_target: return "infeasible target";
    case ErrorCode::config: return "configuration error";
    case ErrorCode::io: return "I/O error";
    }
    return "unknown error";
}

} // namespace limfb
