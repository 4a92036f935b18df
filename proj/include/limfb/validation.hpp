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

// Empirical checks of the distributional laws behind the rate analysis:
//   - cos^2 of the effective quantisation is the max of 2^B iid Beta(N, M-N),
//   - normalised effective channels are isotropic,
//   - ||h_eff||^2 is Gamma(M-N+1, 1) (tested, not proven, for 1 < N < M),
//   - the extreme-value estimate of E[sin^2].

#include "limfb/linalg.hpp"
#include "limfb/stats.hpp"

#include <cstdint>
#include <vector>

namespace limfb {

struct EffectiveSamples {
    int m = 0;
    int n = 0;
    int bits = 0;
    std::vector<double> cos_sq;
    std::vector<double> eff_norm_sq;
    std::vector<CVector> directions; ///< h_eff / ||h_eff||, when requested
};

/// Sample i draws a fresh channel from (seed, {i, 0, channel}) and a fresh
/// codebook from (seed, {i, 0, codebook}).
EffectiveSamples sample_effective_quantization(int m, int n, int bits, std::uint64_t samples, std::uint64_t seed,
                                               unsigned threads = 1, bool keep_directions = false);

struct ValidationThresholds {
    double ks = 0.02;
    double mean_rel = 0.01;        ///< effective-norm mean
    double quant_error_rel = 0.15; ///< extreme-value estimate
    IsotropyThresholds isotropy{};
};

/// cos_sq against the law of the max of 2^B Beta(N, M-N) draws.
FitReport error_law_report(const EffectiveSamples& s, const ValidationThresholds& t = {});
/// eff_norm_sq against Gamma(M-N+1+shape_offset, 1), with the mean check.
FitReport norm_law_report(const EffectiveSamples& s, const ValidationThresholds& t = {}, int shape_offset = 0);
FitReport isotropy_of_effective(const EffectiveSamples& s, std::uint64_t seed, const ValidationThresholds& t = {});
/// Mean sin^2 against quant_error_approx; only defined for N < M.
FitReport quant_error_report(const EffectiveSamples& s, const ValidationThresholds& t = {});

/// Deterministic probe direction for isotropy checks, from (seed, {0, 0, probe}).
CVector isotropy_probe(std::uint64_t seed, std::size_t dim);

struct ValidationSuite {
    int m = 0;
    int n = 0;
    int bits = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    CVector probe;
    std::vector<FitReport> reports;
    bool all_pass = false;
};

/// Runs every applicable check for one (M, N, B). `wrong_reference` shifts the
/// Gamma shape by one so the effective-norm check must fail.
ValidationSuite run_validation(int m, int n, int bits, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1,
                               bool wrong_reference = false, const ValidationThresholds& t = {});

} // namespace limfb
