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
#include "limfb/validation.hpp"

#include "limfb/analysis.hpp"
#include "limfb/error.hpp"
#include "limfb/experiment.hpp"
#include "limfb/quantization.hpp"
#include "limfb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace limfb {

namespace {

// E[X] = int_0^1 (1 - F(x)) dx by composite Simpson.
double mean_from_cdf(const Cdf& cdf)
{
    constexpr int intervals = 20000;
    const double h = 1.0 / intervals;
    double acc = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * (1.0 - cdf(i * h));
    }
    return acc * h / 3.0;
}

std::string triple(const EffectiveSamples& s)
{
    std::ostringstream os;
    os << "(M=" << s.m << ", N=" << s.n << ", B=" << s.bits << ")";
    return os.str();
}

} // namespace

EffectiveSamples sample_effective_quantization(int m, int n, int bits, std::uint64_t samples, std::uint64_t seed,
                                               unsigned threads, bool keep_directions)
{
    if (m < 2 || n < 1 || n > m)
        fail(ErrorCode::invalid_argument, "sample_effective_quantization: need 1 <= N <= M, M >= 2");
    if (samples == 0 || samples >= fixed_codebook_trial)
        fail(ErrorCode::invalid_argument, "sample_effective_quantization: bad sample count");

    EffectiveSamples out;
    out.m = m;
    out.n = n;
    out.bits = bits;
    out.cos_sq.resize(samples);
    out.eff_norm_sq.resize(samples);
    if (keep_directions)
        out.directions.resize(samples);

    parallel_for(samples, threads, [&](std::uint64_t i) {
        const RngStream base(seed, StreamId{static_cast<std::uint32_t>(i), 0, 0});
        RngStream ch = base.derive(0, StreamPurpose::channel);
        RngStream cb = base.derive(0, StreamPurpose::codebook);
        const CMatrix h = sample_gaussian_matrix(ch, static_cast<std::size_t>(m), static_cast<std::size_t>(n));
        const Codebook book = generate_codebook(cb, bits, static_cast<std::size_t>(m));
        const QuantizationResult q = quantize_effective(h, book);
        out.cos_sq[i] = q.cos_sq;
        out.eff_norm_sq[i] = q.eff_norm_sq;
        if (keep_directions)
            out.directions[i] = normalized(q.h_eff);
    });
    return out;
}

FitReport error_law_report(const EffectiveSamples& s, const ValidationThresholds& t)
{
    FitReport r;
    const double count = std::exp2(s.bits);
    if (s.n == s.m) {
        // Every codeword lies in span(H): zero error, point mass at cos^2 = 1.
        // KS distance to a step at 1 is the mass found below it.
        std::size_t below = 0;
        double sum = 0.0;
        for (double c : s.cos_sq) {
            below += c < 1.0 - 1e-10;
            sum += c;
        }
        r.n_samples = s.cos_sq.size();
        r.ks_statistic = s.cos_sq.empty() ? 1.0 : static_cast<double>(below) / static_cast<double>(r.n_samples);
        r.ks_threshold = t.ks;
        r.mean_obs = s.cos_sq.empty() ? 0.0 : sum / static_cast<double>(r.n_samples);
        r.mean_ref = 1.0;
        r.pass = !s.cos_sq.empty() && r.ks_statistic < t.ks;
        r.reference = "point mass at 1 (N = M)";
    } else {
        const int a = s.n;
        const int b = s.m - s.n;
        const Cdf cdf = [a, b, count](double x) { return max_beta_cdf(std::clamp(x, 0.0, 1.0), a, b, count); };
        r = ks_test(s.cos_sq, cdf, t.ks);
        r.mean_ref = mean_from_cdf(cdf);
        std::ostringstream ref;
        ref << "max of " << static_cast<long long>(count) << " iid Beta(" << a << "," << b << ")";
        r.reference = ref.str();
    }
    r.name = "quantization_error_law " + triple(s);
    return r;
}

FitReport norm_law_report(const EffectiveSamples& s, const ValidationThresholds& t, int shape_offset)
{
    const int shape = s.m - s.n + 1 + shape_offset;
    if (shape < 1)
        fail(ErrorCode::invalid_argument, "norm_law_report: shape must be >= 1");
    FitReport r = ks_test(s.eff_norm_sq, [shape](double x) { return gamma_cdf(std::max(0.0, x), shape); }, t.ks,
                          static_cast<double>(shape), t.mean_rel);
    r.name = "effective_norm_law " + triple(s);
    r.reference = "Gamma(" + std::to_string(shape) + ", 1)";
    return r;
}

CVector isotropy_probe(std::uint64_t seed, std::size_t dim)
{
    RngStream rng(seed, StreamId{0, 0, static_cast<std::uint16_t>(StreamPurpose::probe)});
    return sample_isotropic_unit(rng, dim);
}

FitReport isotropy_of_effective(const EffectiveSamples& s, std::uint64_t seed, const ValidationThresholds& t)
{
    if (s.directions.empty())
        fail(ErrorCode::invalid_argument, "isotropy_of_effective: samples were drawn without directions");
    const CVector probe = isotropy_probe(seed, static_cast<std::size_t>(s.m));
    FitReport r = isotropy_report(s.directions, probe, t.isotropy);
    r.name = "effective_direction_isotropy " + triple(s);
    return r;
}

FitReport quant_error_report(const EffectiveSamples& s, const ValidationThresholds& t)
{
    if (s.n >= s.m)
        fail(ErrorCode::invalid_argument, "quant_error_report: needs N < M");
    if (s.cos_sq.empty())
        fail(ErrorCode::invalid_argument, "quant_error_report: no samples");
    double sum = 0.0;
    for (double c : s.cos_sq)
        sum += 1.0 - c;
    FitReport r;
    r.name = "quantization_error_mean " + triple(s);
    r.n_samples = s.cos_sq.size();
    r.mean_obs = sum / static_cast<double>(s.cos_sq.size());
    r.mean_ref = quant_error_approx(s.bits, s.m, s.n);
    r.mean_rel_tolerance = t.quant_error_rel;
    r.reference = "2^{-B/(M-N)} C(M-1,N-1)^{-1/(M-N)}";
    r.pass = std::abs(r.mean_obs - r.mean_ref) <= t.quant_error_rel * r.mean_ref;
    return r;
}

ValidationSuite run_validation(int m, int n, int bits, std::uint64_t samples, std::uint64_t seed, unsigned threads,
                               bool wrong_reference, const ValidationThresholds& t)
{
    ValidationSuite suite;
    suite.m = m;
    suite.n = n;
    suite.bits = bits;
    suite.samples = samples;
    suite.seed = seed;
    suite.probe = isotropy_probe(seed, static_cast<std::size_t>(m));

    const EffectiveSamples s = sample_effective_quantization(m, n, bits, samples, seed, threads, true);
    suite.reports.push_back(error_law_report(s, t));
    suite.reports.push_back(norm_law_report(s, t, wrong_reference ? 1 : 0));
    suite.reports.push_back(isotropy_of_effective(s, seed, t));
    if (n < m)
        suite.reports.push_back(quant_error_report(s, t));
    suite.all_pass = std::all_of(suite.reports.begin(), suite.reports.end(), [](const FitReport& r) { return r.pass; });
    return suite;
}

} // namespace limfb
