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

// Reference implementations used only by the tests. They avoid the library's
// own kernels so that a shared bug cannot hide on both sides of a check.

#include "limfb/linalg.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using limfb::cplx;
using limfb::CMatrix;
using limfb::CVector;

// Independent source of test inputs (not the library's Philox streams).
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}
    double normal() { return dist_(engine_); }
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    cplx cn() { return {normal() * std::sqrt(0.5), normal() * std::sqrt(0.5)}; }
    CVector vec(std::size_t n)
    {
        CVector v(n);
        for (auto& x : v)
            x = cn();
        return v;
    }
    CVector unit(std::size_t n)
    {
        CVector v = vec(n);
        double s = 0.0;
        for (const auto& x : v)
            s += std::norm(x);
        for (auto& x : v)
            x /= std::sqrt(s);
        return v;
    }
    CMatrix mat(std::size_t r, std::size_t c)
    {
        CMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                a(i, j) = cn();
        return a;
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_;
};

inline cplx dot(const CVector& a, const CVector& b)
{
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += std::conj(a[k]) * b[k];
    return s;
}

inline double nrm2(const CVector& a)
{
    double s = 0.0;
    for (const auto& x : a)
        s += std::norm(x);
    return s;
}

inline CVector col(const CMatrix& a, std::size_t c)
{
    CVector v(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        v[r] = a(r, c);
    return v;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    return out;
}

inline CVector matvec(const CMatrix& a, const CVector& x)
{
    CVector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            out[i] += a(i, k) * x[k];
    return out;
}

inline CMatrix herm(const CMatrix& a)
{
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = std::conj(a(i, j));
    return out;
}

// Gauss-Jordan inverse with partial pivoting.
inline CMatrix gj_inverse(const CMatrix& a)
{
    const std::size_t n = a.rows();
    CMatrix w = a;
    CMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        inv(i, i) = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(w(r, c)) > std::abs(w(piv, c)))
                piv = r;
        if (std::abs(w(piv, c)) < 1e-300)
            throw std::runtime_error("gj_inverse: singular");
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(w(c, k), w(piv, k));
            std::swap(inv(c, k), inv(piv, k));
        }
        const cplx p = w(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            w(c, k) /= p;
            inv(c, k) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c)
                continue;
            const cplx f = w(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                w(r, k) -= f * w(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

// Orthogonal projector onto span(H): H (H^H H)^{-1} H^H.
inline CMatrix projector(const CMatrix& h)
{
    const CMatrix hh = herm(h);
    return matmul(matmul(h, gj_inverse(matmul(hh, h))), hh);
}

// ||P w||^2 for unit w, i.e. cos^2 of the angle between w and span(H).
inline double cos_sq_to_span(const CMatrix& h, const CVector& w)
{
    return nrm2(matvec(projector(h), w)) / nrm2(w);
}

// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000)
{
    if (panels % 2)
        ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double max_abs(const CMatrix& a, const CMatrix& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

inline CMatrix eye(std::size_t n)
{
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        a(i, i) = 1.0;
    return a;
}

inline CVector basis(std::size_t n, std::size_t k)
{
    CVector v(n, 0.0);
    v[k] = 1.0;
    return v;
}

} // namespace oracle
