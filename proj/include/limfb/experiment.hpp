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

// Monte Carlo driver for the limited-feedback zero-forcing downlink.
//
// Each trial is one fading block: M users, each with an M x N channel, each
// quantising with effective-channel quantisation and its own codebook. The
// transmitter zero-forces on the quantisations. Noise is never sampled; rates
// are log2(1 + SINR) of the deterministic SINR.
//
// Random streams: trial t of an experiment seeded s draws
//   user u's channel   from (s, {t, u, channel})
//   user u's codebook  from (s, {t, u, codebook})   (per-block policy)
//                       or (s, {fixed_codebook_trial, u, codebook}) (fixed policy)
//   the CSIT baseline  from (s, {t, 0, baseline_channel})
// so results depend only on (config, seed), never on thread scheduling. The
// same trial index reuses the same channels at every SNR grid point.

#include "limfb/linalg.hpp"
#include "limfb/quantization.hpp"
#include "limfb/rng.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace limfb {

enum class BitsRule { fixed, scaling };
enum class CodebookPolicy { per_block, fixed };

const char* to_string(BitsRule rule) noexcept;
const char* to_string(CodebookPolicy policy) noexcept;

inline constexpr std::uint32_t fixed_codebook_trial = 0xFFFFFFFFu;

struct ExperimentConfig {
    int m = 4;                          ///< transmit antennas = users
    int n = 1;                          ///< receive antennas per user
    std::vector<double> snr_db{10.0};
    BitsRule bits_rule = BitsRule::fixed;
    int bits = 8;                       ///< used by BitsRule::fixed
    double rate_gap = 1.0;              ///< target r for BitsRule::scaling
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    CodebookPolicy codebook_policy = CodebookPolicy::per_block;

    /// Throws config errors for violated invariants.
    void validate() const;
};

/// Feedback bits at one SNR point. Scaling rule: ceil of the real-valued law,
/// floored at 1 bit.
int resolve_bits(const ExperimentConfig& cfg, double snr_db);

/// Real-valued bits before rounding (the fixed value for BitsRule::fixed).
double resolve_bits_unrounded(const ExperimentConfig& cfg, double snr_db);

struct TrialRecord {
    std::vector<double> sinrs;
    double rate_fb = 0.0;
    double rate_zf = 0.0;
    bool dropped = false;
    std::vector<double> sin_sq;  ///< per-user quantisation error
    double max_leakage = 0.0;    ///< max_{i != j} |q_i^H v_j|
    double max_norm_deviation = 0.0;
};

/// Feedback half of a trial for given channels and codebooks: quantise, zero-force,
/// SINR and rate_fb. rate_zf is left at 0.
TrialRecord evaluate_block(std::span<const CMatrix> channels, std::span<const Codebook> codebooks, double power);

/// One fading block. `trial_rng` names (seed, trial); sub-streams are derived
/// from it. Fixed-policy codebooks are passed in, otherwise drawn per block.
TrialRecord run_trial(const ExperimentConfig& cfg, double power, int bits, const RngStream& trial_rng,
                      std::span<const Codebook> fixed_codebooks = {});

/// Codebooks for CodebookPolicy::fixed, one per user.
std::vector<Codebook> fixed_codebooks(const ExperimentConfig& cfg, int bits);

struct GridPointResult {
    double snr_db = 0.0;
    int n_rx = 1;
    int bits = 0;
    double bits_unrounded = 0.0;
    double rate_fb_mean = 0.0;
    double rate_fb_ci = 0.0; ///< 95% half-width; NaN with fewer than 2 kept trials
    double rate_zf_mean = 0.0;
    double rate_zf_ci = 0.0;
    double gap = 0.0;        ///< rate_zf_mean - rate_fb_mean (sum rate)
    double mean_sin_sq = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t dropped = 0;
    bool dropped_warning = false; ///< more than 1% dropped
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<GridPointResult> points;
    std::vector<std::string> warnings;
};

/// Runs every SNR point. `threads` only affects wall-clock time.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

/// Calls body(i) for i in [0, count) over `threads` workers, contiguous blocks.
/// The first exception thrown by any worker is rethrown.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body);

} // namespace limfb
