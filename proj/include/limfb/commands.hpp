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

// Batch commands behind the CLI: parameter sweeps, scaling tables and the
// distributional validation suites. Everything here returns text (CSV or
// JSON); writing files is the caller's business.

#include "limfb/config.hpp"
#include "limfb/experiment.hpp"
#include "limfb/validation.hpp"

#include <string>
#include <vector>

namespace limfb {

inline constexpr const char* tool_version = "1.0.0";

inline constexpr const char* sweep_csv_header =
    "snr_db,n_rx,bits,rate_fb_mean,rate_fb_ci,rate_zf_mean,rate_zf_ci,gap,dropped";

struct SweepOutput {
    std::vector<ExperimentResult> results; ///< one per n_rx, in config order
    std::string csv;
    std::string manifest_json; ///< deterministic: no timing, no thread count
    std::vector<std::string> warnings;
};

/// Runs one experiment per n_rx value. cfg.seed must be set.
SweepOutput run_sweep(const RunConfig& cfg, unsigned threads = 1);

std::string sweep_csv(const std::vector<ExperimentResult>& results);

struct ScalingRow {
    int m = 0;
    int n = 0;
    double rate_gap = 1.0;
    double p_db = 0.0;
    bool feasible = false;
    double bits = 0.0;           ///< unrounded
    int bits_ceil = 0;
    int bits_rounded = 0;
    double savings_exact = 0.0;  ///< bits(N=1) - bits(N)
    double savings_approx = 0.0; ///< closed-form approximation
};

std::vector<ScalingRow> scaling_table(int m, const std::vector<int>& n_list, double rate_gap,
                                      const std::vector<double>& p_db_list);
std::string scaling_table_csv(const std::vector<ScalingRow>& rows);

struct ValidateOutput {
    std::vector<ValidationSuite> suites; ///< one per n_rx
    std::string report_json;
    bool all_pass = false;
};

/// Validation suites at (m, each n_rx, bits) with cfg.samples draws each.
/// bits_rule is ignored; cfg.bits is used. cfg.seed must be set.
ValidateOutput run_validate(const RunConfig& cfg, unsigned threads = 1, bool wrong_reference = false);

} // namespace limfb
