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
#include "limfb/experiment.hpp"

#include "limfb/analysis.hpp"
#include "limfb/error.hpp"
#include "limfb/precoding.hpp"
#include "limfb/stats.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace limfb {

const char* to_string(BitsRule rule) noexcept
{
    return rule == BitsRule::fixed ? "fixed" : "scaling";
}

const char* to_string(CodebookPolicy policy) noexcept
{
    return policy == CodebookPolicy::per_block ? "per_block" : "fixed";
}

void ExperimentConfig::validate() const
{
    auto bad = [](const std::string& msg) { fail(ErrorCode::config, msg); };
    if (m < 2 || m > 64)
        bad("M must be in [2, 64]");
    if (n < 1 || n > m)
        bad("N must satisfy 1 <= N <= M");
    if (snr_db.empty())
        bad("snr_db grid is empty");
    for (double p : snr_db)
        if (!std::isfinite(p))
            bad("snr_db values must be finite");
    if (trials < 1)
        bad("trials must be >= 1");
    if (trials >= fixed_codebook_trial)
        bad("trials must be below 2^32 - 1");
    if (bits_rule == BitsRule::fixed) {
        if (bits < 1 || bits > max_codebook_bits)
            bad("bits must be in [1, " + std::to_string(max_codebook_bits) + "]");
    } else {
        if (!(rate_gap > 0.0))
            bad("rate_gap must be positive");
        if (n >= m)
            bad("the scaling rule needs N < M");
    }
}

double resolve_bits_unrounded(const ExperimentConfig& cfg, double snr_db)
{
    if (cfg.bits_rule == BitsRule::fixed)
        return cfg.bits;
    return bits_required(ScalingInputs{cfg.m, cfg.n, snr_db, cfg.rate_gap});
}

int resolve_bits(const ExperimentConfig& cfg, double snr_db)
{
    if (cfg.bits_rule == BitsRule::fixed)
        return cfg.bits;
    const double raw = resolve_bits_unrounded(cfg, snr_db);
    const int bits = std::max(1, static_cast<int>(std::ceil(raw)));
    if (bits > max_codebook_bits)
        fail(ErrorCode::capacity, "scaling rule asks for " + std::to_string(bits) + " bits at " +
                                      std::to_string(snr_db) + " dB; the limit is " +
                                      std::to_string(max_codebook_bits));
    return bits;
}

TrialRecord evaluate_block(std::span<const CMatrix> channels, std::span<const Codebook> codebooks, double power)
{
    const std::size_t m = channels.size();
    if (codebooks.size() != m)
        fail(ErrorCode::dimension_mismatch, "evaluate_block: one codebook per user required");

    TrialRecord rec;
    std::vector<QuantizationResult> quant;
    quant.reserve(m);
    try {
        for (std::size_t u = 0; u < m; ++u)
            quant.push_back(quantize_effective(channels[u], codebooks[u]));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::degenerate_channel)
            throw;
        rec.dropped = true;
        return rec;
    }

    std::vector<CVector> q_hats;
    q_hats.reserve(m);
    for (const auto& q : quant) {
        q_hats.push_back(q.q_hat);
        rec.sin_sq.push_back(q.sin_sq);
    }

    BeamformerSet bf;
    try {
        bf = zfbf_vectors(q_hats);
    } catch (const IllConditionedError&) {
        rec.dropped = true;
        return rec;
    }
    rec.max_leakage = max_leakage(q_hats, bf);
    rec.max_norm_deviation = max_norm_deviation(bf);

    rec.sinrs.resize(m);
    for (std::size_t u = 0; u < m; ++u)
        rec.sinrs[u] = sinr(quant[u].h_eff, bf, u, power, m);
    rec.rate_fb = sum_rate(rec.sinrs);
    return rec;
}

std::vector<Codebook> fixed_codebooks(const ExperimentConfig& cfg, int bits)
{
    std::vector<Codebook> out;
    const RngStream base(cfg.seed, StreamId{fixed_codebook_trial, 0, 0});
    for (int u = 0; u < cfg.m; ++u) {
        RngStream rng = base.derive(static_cast<std::uint16_t>(u), StreamPurpose::codebook);
        out.push_back(generate_codebook(rng, bits, static_cast<std::size_t>(cfg.m)));
    }
    return out;
}

TrialRecord run_trial(const ExperimentConfig& cfg, double power, int bits, const RngStream& trial_rng,
                      std::span<const Codebook> fixed)
{
    const auto m = static_cast<std::size_t>(cfg.m);
    const auto n = static_cast<std::size_t>(cfg.n);

    std::vector<CMatrix> channels;
    std::vector<Codebook> drawn;
    channels.reserve(m);
    for (std::size_t u = 0; u < m; ++u) {
        const auto user = static_cast<std::uint16_t>(u);
        RngStream ch = trial_rng.derive(user, StreamPurpose::channel);
        channels.push_back(sample_gaussian_matrix(ch, m, n));
        if (fixed.empty()) {
            RngStream cb = trial_rng.derive(user, StreamPurpose::codebook);
            drawn.push_back(generate_codebook(cb, bits, m));
        }
    }
    if (!fixed.empty() && fixed.size() != m)
        fail(ErrorCode::invalid_argument, "run_trial: fixed codebooks must cover every user");

    TrialRecord rec = evaluate_block(channels, fixed.empty() ? std::span<const Codebook>(drawn) : fixed, power);
    if (rec.dropped)
        return rec;

    RngStream base = trial_rng.derive(0, StreamPurpose::baseline_channel);
    std::vector<CVector> single;
    single.reserve(m);
    for (std::size_t u = 0; u < m; ++u)
        single.push_back(sample_gaussian(base, m));
    try {
        rec.rate_zf = perfect_csit_rate(single, power);
    } catch (const IllConditionedError&) {
        rec.dropped = true;
    }
    return rec;
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = t * chunk;
        const std::uint64_t end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::uint64_t i = begin; i < end; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

namespace {

struct TrialSummary {
    double rate_fb = 0.0;
    double rate_zf = 0.0;
    double mean_sin_sq = 0.0;
    bool dropped = false;
};

MeanCi summarise(const std::vector<double>& values)
{
    if (values.empty())
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    if (values.size() == 1)
        return {values.front(), std::numeric_limits<double>::quiet_NaN()};
    return mean_ci(values, 0.95);
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads)
{
    cfg.validate();
    ExperimentResult result;
    result.config = cfg;

    for (double snr_db : cfg.snr_db) {
        const int bits = resolve_bits(cfg, snr_db);
        const double power = db_to_linear(snr_db);
        const std::vector<Codebook> fixed =
            cfg.codebook_policy == CodebookPolicy::fixed ? fixed_codebooks(cfg, bits) : std::vector<Codebook>{};

        std::vector<TrialSummary> summaries(cfg.trials);
        parallel_for(cfg.trials, threads, [&](std::uint64_t t) {
            const RngStream trial_rng(cfg.seed, StreamId{static_cast<std::uint32_t>(t), 0, 0});
            const TrialRecord rec = run_trial(cfg, power, bits, trial_rng, fixed);
            TrialSummary& s = summaries[t];
            s.dropped = rec.dropped;
            s.rate_fb = rec.rate_fb;
            s.rate_zf = rec.rate_zf;
            double err = 0.0;
            for (double e : rec.sin_sq)
                err += e;
            s.mean_sin_sq = rec.sin_sq.empty() ? 0.0 : err / static_cast<double>(rec.sin_sq.size());
        });

        GridPointResult pt;
        pt.snr_db = snr_db;
        pt.n_rx = cfg.n;
        pt.bits = bits;
        pt.bits_unrounded = resolve_bits_unrounded(cfg, snr_db);
        pt.trials = cfg.trials;
        std::vector<double> fb;
        std::vector<double> zf;
        double err_sum = 0.0;
        for (const auto& s : summaries) {
            if (s.dropped) {
                ++pt.dropped;
                continue;
            }
            fb.push_back(s.rate_fb);
            zf.push_back(s.rate_zf);
            err_sum += s.mean_sin_sq;
        }
        const MeanCi fb_ci = summarise(fb);
        const MeanCi zf_ci = summarise(zf);
        pt.rate_fb_mean = fb_ci.mean;
        pt.rate_fb_ci = fb_ci.half_width;
        pt.rate_zf_mean = zf_ci.mean;
        pt.rate_zf_ci = zf_ci.half_width;
        pt.gap = pt.rate_zf_mean - pt.rate_fb_mean;
        pt.mean_sin_sq = fb.empty() ? std::numeric_limits<double>::quiet_NaN() : err_sum / static_cast<double>(fb.size());
        pt.dropped_warning = 100 * pt.dropped > pt.trials;
        if (pt.dropped_warning) {
            std::ostringstream w;
            w << "N=" << cfg.n << " SNR=" << snr_db << " dB: " << pt.dropped << " of " << pt.trials
              << " trials dropped (ill-conditioned beamformer stack)";
            result.warnings.push_back(w.str());
        }
        result.points.push_back(pt);
    }
    return result;
}

} // namespace limfb
