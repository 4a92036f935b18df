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
#include "limfb/stats.hpp"

#include "limfb/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace limfb {

namespace {

void check_beta_args(double x, int a, int b)
{
    if (!(x >= 0.0 && x <= 1.0))
        fail(ErrorCode::invalid_argument, "beta_cdf: x outside [0, 1]");
    if (a < 1 || b < 1)
        fail(ErrorCode::invalid_argument, "beta_cdf: parameters must be integers >= 1");
}

// sum_{j=lo}^{hi} C(n, j) x^j (1-x)^{n-j}
double binomial_terms(double x, int n, int lo, int hi)
{
    double total = 0.0;
    for (int j = lo; j <= hi; ++j) {
        double binom = 1.0;
        for (int i = 1; i <= j; ++i)
            binom = binom * (n - j + i) / i;
        total += binom * std::pow(x, j) * std::pow(1.0 - x, n - j);
    }
    return total;
}

} // namespace

double beta_cdf(double x, int a, int b)
{
    check_beta_args(x, a, b);
    const int n = a + b - 1;
    return std::min(1.0, binomial_terms(x, n, a, n));
}

double beta_ccdf(double x, int a, int b)
{
    check_beta_args(x, a, b);
    const int n = a + b - 1;
    return std::min(1.0, binomial_terms(x, n, 0, a - 1));
}

double max_beta_cdf(double x, int a, int b, double n)
{
    if (!(n >= 1.0))
        fail(ErrorCode::invalid_argument, "max_beta_cdf: n must be >= 1");
    const double lower = beta_cdf(x, a, b);
    if (lower > 0.5)
        return std::exp(n * std::log1p(-beta_ccdf(x, a, b)));
    return std::pow(lower, n);
}

double gamma_cdf(double x, int shape)
{
    if (shape < 1)
        fail(ErrorCode::invalid_argument, "gamma_cdf: shape must be an integer >= 1");
    if (!(x >= 0.0))
        fail(ErrorCode::invalid_argument, "gamma_cdf: x must be >= 0");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;

    double term = std::exp(-x);
    if (x < shape) {
        // Lower tail series e^{-x} sum_{k>=shape} x^k/k! avoids cancellation.
        for (int k = 1; k <= shape; ++k)
            term *= x / k;
        double total = 0.0;
        for (int k = shape; term > total * 1e-17; ++k) {
            total += term;
            term *= x / (k + 1);
        }
        return std::min(1.0, total);
    }
    double upper = 0.0;
    for (int k = 0; k < shape; ++k) {
        upper += term;
        term *= x / (k + 1);
    }
    return std::max(0.0, 1.0 - upper);
}

double ks_statistic(std::span<const double> samples, const Cdf& cdf)
{
    if (samples.empty())
        fail(ErrorCode::invalid_argument, "ks_statistic: empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double k = static_cast<double>(i);
        d = std::max({d, (k + 1.0) / n - f, f - k / n});
    }
    return d;
}

FitReport ks_test(std::span<const double> samples, const Cdf& cdf, double ks_threshold,
                  std::optional<double> mean_ref, double mean_rel_tolerance)
{
    if (samples.size() < 100)
        fail(ErrorCode::invalid_argument, "ks_test: need at least 100 samples");
    FitReport r;
    r.n_samples = samples.size();
    r.ks_statistic = ks_statistic(samples, cdf);
    r.ks_threshold = ks_threshold;
    double sum = 0.0;
    for (double s : samples)
        sum += s;
    r.mean_obs = sum / static_cast<double>(samples.size());
    r.pass = r.ks_statistic < ks_threshold;
    if (mean_ref) {
        r.mean_ref = *mean_ref;
        r.mean_rel_tolerance = mean_rel_tolerance;
        r.pass = r.pass && std::abs(r.mean_obs - *mean_ref) <= mean_rel_tolerance * std::abs(*mean_ref);
    }
    return r;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        fail(ErrorCode::invalid_argument, "ks_two_sample: empty sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v)
            ++i;
        while (j < y.size() && y[j] <= v)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha)
{
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

FitReport isotropy_report(std::span<const CVector> vectors, std::span<const cplx> probe,
                          const IsotropyThresholds& thresholds)
{
    if (vectors.size() < 1000)
        fail(ErrorCode::invalid_argument, "isotropy_report: need at least 1000 vectors");
    const std::size_t m = probe.size();
    if (m < 2)
        fail(ErrorCode::invalid_argument, "isotropy_report: dimension must be >= 2");
    const CVector u = normalized(probe);

    CVector mean(m, 0.0);
    CMatrix cov(m, m);
    std::vector<double> projections;
    projections.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.size() != m)
            fail(ErrorCode::dimension_mismatch, "isotropy_report: vector dimension differs from probe");
        for (std::size_t i = 0; i < m; ++i) {
            mean[i] += v[i];
            for (std::size_t j = 0; j < m; ++j)
                cov(i, j) += v[i] * std::conj(v[j]);
        }
        projections.push_back(std::norm(inner(u, v)));
    }
    const double n = static_cast<double>(vectors.size());
    double cov_dev = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const cplx target = i == j ? cplx(1.0 / static_cast<double>(m)) : cplx(0.0);
            cov_dev = std::max(cov_dev, std::abs(cov(i, j) / n - target));
        }
    for (auto& v : mean)
        v /= n;

    const int b = static_cast<int>(m) - 1;
    FitReport r = ks_test(projections, [b](double x) { return beta_cdf(std::clamp(x, 0.0, 1.0), 1, b); },
                          thresholds.ks, 1.0 / static_cast<double>(m), 0.0);
    r.mean_rel_tolerance = 0.0;
    r.pass = r.ks_statistic < thresholds.ks;
    r.cov_deviation = cov_dev;
    r.cov_threshold = thresholds.cov_max_deviation;
    r.mean_vector_norm = norm(mean);
    r.mean_vector_threshold = thresholds.mean_norm_scale / std::sqrt(n);
    r.pass = r.pass && cov_dev < r.cov_threshold && r.mean_vector_norm <= r.mean_vector_threshold;
    std::ostringstream ref;
    ref << "isotropic on the unit sphere of C^" << m << "; probe projection ~ Beta(1," << b << ")";
    r.reference = ref.str();
    return r;
}

double normal_two_sided_z(double level)
{
    if (!(level > 0.0 && level < 1.0))
        fail(ErrorCode::invalid_argument, "confidence level must be in (0, 1)");
    double lo = 0.0;
    double hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::erf(mid / std::sqrt(2.0)) < level)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

MeanCi mean_ci(std::span<const double> samples, double level)
{
    if (samples.size() < 2)
        fail(ErrorCode::invalid_argument, "mean_ci: need at least 2 samples");
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double s : samples)
        sum += s;
    const double mean = sum / n;
    double ss = 0.0;
    for (double s : samples)
        ss += (s - mean) * (s - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    return {mean, normal_two_sided_z(level) * sd / std::sqrt(n)};
}

} // namespace limfb
