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

// Closed-form rate-gap and feedback-scaling expressions for effective-channel
// quantisation with RVQ and zero-forcing.
//
// The scaling law in dB treats 3 dB as a factor of two: log2(P) = P_dB / 3.
// Use scaling_law_power() when a linear P must agree with bits_required()
// exactly; use db_to_linear() for the physical SNR.

namespace limfb {

struct ScalingInputs {
    int m = 0;          ///< transmit antennas, >= 2
    int n = 1;          ///< receive antennas, in [1, m-1]
    double p_db = 0.0;  ///< SNR in dB
    double rate_gap = 1.0; ///< target per-user gap r in bps/Hz, > 0
};

double db_to_linear(double p_db);

/// 2^(P_dB / 3), the linear power implied by the scaling law's dB convention.
double scaling_law_power(double p_db);

/// ln C(n, k), exact enough for n up to a few hundred.
double log_binomial(int n, int k);

/// Rate loss from the effective channel's reduced degrees of freedom:
/// log2(e) * sum_{l=M-N+1}^{M-1} 1/l.
double delta_a(int m, int n);

/// Extreme-value estimate of E[sin^2]: 2^{-B/(M-N)} C(M-1,N-1)^{-1/(M-N)}.
double quant_error_approx(double bits, int m, int n);

/// delta_a + log2(1 + P (M-N+1)/M quant_error_approx), P linear.
double rate_gap_bound(double power, double bits, int m, int n);

/// c = 2^r e^{-sum 1/l} - 1; must be positive for the target to be reachable.
double scaling_constant(int m, int n, double rate_gap);

/// Real-valued feedback bits per user for the target gap. Throws
/// infeasible_target when r does not exceed the delta_a floor.
double bits_required(const ScalingInputs& in);

/// Approximate bits saved by N receive antennas relative to one, at r = 1.
double feedback_savings(int m, int n, double p_db);

} // namespace limfb
