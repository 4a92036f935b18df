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
#include "limfb/analysis.hpp"

#include "limfb/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace limfb {

namespace {

void check_antennas(int m, int n)
{
    if (m < 2 || n < 1 || n > m - 1)
        fail(ErrorCode::invalid_argument,
             "antenna counts need M >= 2 and 1 <= N <= M-1 (got M=" + std::to_string(m) + ", N=" + std::to_string(n) + ")");
}

double harmonic_tail(int m, int n)
{
    double s = 0.0;
    for (int l = m - n + 1; l <= m - 1; ++l)
        s += 1.0 / l;
    return s;
}

} // namespace

double db_to_linear(double p_db)
{
    return std::pow(10.0, p_db / 10.0);
}

double scaling_law_power(double p_db)
{
    return std::exp2(p_db / 3.0);
}

double log_binomial(int n, int k)
{
    if (k < 0 || k > n)
        fail(ErrorCode::invalid_argument, "log_binomial: k outside [0, n]");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double delta_a(int m, int n)
{
    check_antennas(m, n);
    return std::numbers::log2e * harmonic_tail(m, n);
}

double quant_error_approx(double bits, int m, int n)
{
    check_antennas(m, n);
    const double d = m - n;
    const double log2_binom = log_binomial(m - 1, n - 1) * std::numbers::log2e;
    return std::exp2(-(bits + log2_binom) / d);
}

double rate_gap_bound(double power, double bits, int m, int n)
{
    if (power < 0.0)
        fail(ErrorCode::invalid_argument, "rate_gap_bound: negative power");
    const double dof = static_cast<double>(m - n + 1) / m;
    return delta_a(m, n) + std::log2(1.0 + power * dof * quant_error_approx(bits, m, n));
}

double scaling_constant(int m, int n, double rate_gap)
{
    check_antennas(m, n);
    return std::exp2(rate_gap) * std::exp(-harmonic_tail(m, n)) - 1.0;
}

double bits_required(const ScalingInputs& in)
{
    check_antennas(in.m, in.n);
    if (!(in.rate_gap > 0.0))
        fail(ErrorCode::invalid_argument, "target rate gap must be positive");
    const double c = scaling_constant(in.m, in.n, in.rate_gap);
    if (!(c > 0.0))
        fail(ErrorCode::infeasible_target,
             "target gap " + std::to_string(in.rate_gap) + " bps/Hz is below the " +
                 std::to_string(delta_a(in.m, in.n)) + " bps/Hz loss that feedback cannot remove");
    const double d = in.m - in.n;
    return d / 3.0 * in.p_db - d * std::log2(c) - d * std::log2(static_cast<double>(in.m) / (in.m - in.n + 1)) -
           log_binomial(in.m - 1, in.n - 1) * std::numbers::log2e;
}

double feedback_savings(int m, int n, double p_db)
{
    check_antennas(m, n);
    return (n - 1) / 3.0 * p_db + log_binomial(m - 1, n - 1) * std::numbers::log2e - (n - 1) * std::numbers::log2e;
}

} // namespace limfb
