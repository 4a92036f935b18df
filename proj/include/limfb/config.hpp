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

// Run configuration files.
//
// Grammar, one setting per line:
//     # comment
//     key = value
//     key = v1, v2, v3
// Keys are case-insensitive; unknown keys and duplicates are errors. Errors
// are reported as "<source>:<line>: <message>".
//
//   m               transmit antennas (= users)                 default 4
//   n_rx            receive antennas per user, list             default 1
//   snr_db          SNR grid in dB, list                        default 10
//   bits_rule       fixed | scaling                             default fixed
//   bits            feedback bits for bits_rule = fixed         default 8
//   rate_gap        target per-user gap r for scaling, bps/Hz   default 1
//   trials          fading blocks per grid point                default 1000
//   samples         draws per validation suite                  default 100000
//   seed            64-bit seed; auto-generated when absent
//   codebook_policy per_block | fixed                           default per_block

#include "limfb/experiment.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace limfb {

struct RunConfig {
    int m = 4;
    std::vector<int> n_rx{1};
    std::vector<double> snr_db{10.0};
    BitsRule bits_rule = BitsRule::fixed;
    int bits = 8;
    double rate_gap = 1.0;
    std::uint64_t trials = 1000;
    std::uint64_t samples = 100000;
    std::optional<std::uint64_t> seed;
    CodebookPolicy codebook_policy = CodebookPolicy::per_block;
};

/// Parses and validates. Throws Error(config) with a line-anchored message.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");

/// Reads a config file; a .json path is read as a run manifest and its
/// "config" object is used, so a manifest reproduces its run.
RunConfig load_config(const std::string& path);

/// Checks cross-key invariants. Throws Error(config).
void validate_config(const RunConfig& cfg);

/// Per-N experiment settings. The seed must already be resolved.
ExperimentConfig experiment_for(const RunConfig& cfg, int n_rx);

/// JSON echo of the config, as stored in manifests.
std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(std::string_view json, const std::string& source = "<json>");

} // namespace limfb
