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

// Reference laws with integer parameters and goodness-of-fit helpers.

#include "limfb/linalg.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace limfb {

/// Regularised incomplete beta I_x(a, b) for integer a, b >= 1, from the
/// finite binomial sum.
double beta_cdf(double x, int a, int b);

/// 1 - I_x(a, b), evaluated without cancellation.
double beta_ccdf(double x, int a, int b);

/// CDF of the maximum of n iid Beta(a, b) variables.
double max_beta_cdf(double x, int a, int b, double n);

/// Erlang / Gamma(shape, 1) CDF for integer shape >= 1.
double gamma_cdf(double x, int shape);

using Cdf = std::function<double(double)>;

struct FitReport {
    std::string name;
    std::size_t n_samples = 0;
    double ks_statistic = 0.0;
    double ks_threshold = 0.0;
    double mean_obs = 0.0;
    double mean_ref = 0.0;
    double mean_rel_tolerance = 0.0; ///< 0 disables the mean check
    double cov_deviation = 0.0;      ///< isotropy reports only
    double cov_threshold = 0.0;
    double mean_vector_norm = 0.0;   ///< isotropy reports only
    double mean_vector_threshold = 0.0;
    std::string reference;           ///< human-readable reference law
    bool pass = false;
};

/// Kolmogorov-Smirnov sup distance of the sorted sample against `cdf`.
double ks_statistic(std::span<const double> samples, const Cdf& cdf);

/// One-sample KS report. Requires at least 100 samples. When mean_ref is
/// given, the observed mean must also be within mean_rel_tolerance of it.
FitReport ks_test(std::span<const double> samples, const Cdf& cdf, double ks_threshold,
                  std::optional<double> mean_ref = std::nullopt, double mean_rel_tolerance = 0.0);

/// Two-sample KS distance.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample KS critical value sqrt(-ln(alpha/2)/2) sqrt((n+m)/(nm)).
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha);

struct IsotropyThresholds {
    double cov_max_deviation = 0.01;
    double ks = 0.02;
    double mean_norm_scale = 3.0; ///< mean-vector bound is scale / sqrt(n)
};

/// Isotropy check for unit vectors: sample mean near 0, sample covariance
/// near I/M, and |<u, v>|^2 against Beta(1, M-1) for the probe u.
FitReport isotropy_report(std::span<const CVector> vectors, std::span<const cplx> probe,
                          const IsotropyThresholds& thresholds = {});

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;
};

/// Normal-approximation confidence interval; needs n >= 2.
MeanCi mean_ci(std::span<const double> samples, double level = 0.95);

/// Two-sided standard normal quantile for the given coverage level.
double normal_two_sided_z(double level);

} // namespace limfb
