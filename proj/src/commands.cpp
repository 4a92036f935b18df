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
#include "limfb/commands.hpp"

#include "limfb/analysis.hpp"
#include "limfb/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace limfb {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

ojson number_or_null(double v)
{
    return std::isfinite(v) ? ojson(v) : ojson(nullptr);
}

ojson report_json(const FitReport& r)
{
    ojson j;
    j["name"] = r.name;
    j["reference"] = r.reference;
    j["n_samples"] = r.n_samples;
    j["ks_statistic"] = r.ks_statistic;
    j["ks_threshold"] = r.ks_threshold;
    j["mean_obs"] = number_or_null(r.mean_obs);
    j["mean_ref"] = number_or_null(r.mean_ref);
    j["mean_rel_tolerance"] = r.mean_rel_tolerance;
    if (r.cov_threshold > 0.0) {
        j["cov_deviation"] = r.cov_deviation;
        j["cov_threshold"] = r.cov_threshold;
        j["mean_vector_norm"] = r.mean_vector_norm;
        j["mean_vector_threshold"] = r.mean_vector_threshold;
    }
    j["pass"] = r.pass;
    return j;
}

ojson manifest_header(const RunConfig& cfg, const char* command)
{
    ojson j;
    j["tool"] = "limfb";
    j["version"] = tool_version;
    j["command"] = command;
    j["seed"] = *cfg.seed;
    j["config"] = ojson::parse(config_to_json(cfg));
    return j;
}

} // namespace

std::string sweep_csv(const std::vector<ExperimentResult>& results)
{
    std::string out = std::string(sweep_csv_header) + "\n";
    for (const auto& res : results)
        for (const auto& p : res.points) {
            out += fmt(p.snr_db) + "," + std::to_string(p.n_rx) + "," + std::to_string(p.bits) + "," +
                   fmt(p.rate_fb_mean) + "," + fmt(p.rate_fb_ci) + "," + fmt(p.rate_zf_mean) + "," +
                   fmt(p.rate_zf_ci) + "," + fmt(p.gap) + "," + std::to_string(p.dropped) + "\n";
        }
    return out;
}

SweepOutput run_sweep(const RunConfig& cfg, unsigned threads)
{
    validate_config(cfg);
    if (!cfg.seed)
        fail(ErrorCode::config, "sweep: seed must be resolved");
    SweepOutput out;
    for (int n : cfg.n_rx) {
        out.results.push_back(run_experiment(experiment_for(cfg, n), threads));
        const auto& w = out.results.back().warnings;
        out.warnings.insert(out.warnings.end(), w.begin(), w.end());
    }
    out.csv = sweep_csv(out.results);

    ojson j = manifest_header(cfg, "sweep");
    ojson rows = ojson::array();
    for (const auto& res : out.results)
        for (const auto& p : res.points) {
            ojson r;
            r["snr_db"] = p.snr_db;
            r["n_rx"] = p.n_rx;
            r["bits"] = p.bits;
            r["bits_unrounded"] = p.bits_unrounded;
            r["rate_fb_mean"] = number_or_null(p.rate_fb_mean);
            r["rate_fb_ci"] = number_or_null(p.rate_fb_ci);
            r["rate_zf_mean"] = number_or_null(p.rate_zf_mean);
            r["rate_zf_ci"] = number_or_null(p.rate_zf_ci);
            r["gap"] = number_or_null(p.gap);
            r["mean_sin_sq"] = number_or_null(p.mean_sin_sq);
            r["trials"] = p.trials;
            r["dropped"] = p.dropped;
            r["dropped_warning"] = p.dropped_warning;
            rows.push_back(r);
        }
    j["rows"] = rows;
    j["validation"] = ojson::array();
    j["warnings"] = out.warnings;
    out.manifest_json = j.dump(2) + "\n";
    return out;
}

std::vector<ScalingRow> scaling_table(int m, const std::vector<int>& n_list, double rate_gap,
                                      const std::vector<double>& p_db_list)
{
    std::vector<ScalingRow> rows;
    for (double p_db : p_db_list) {
        double single_antenna = std::nan("");
        try {
            single_antenna = bits_required(ScalingInputs{m, 1, p_db, rate_gap});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::infeasible_target)
                throw;
        }
        for (int n : n_list) {
            ScalingRow row;
            row.m = m;
            row.n = n;
            row.rate_gap = rate_gap;
            row.p_db = p_db;
            try {
                row.bits = bits_required(ScalingInputs{m, n, p_db, rate_gap});
                row.feasible = true;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::infeasible_target)
                    throw;
            }
            if (row.feasible) {
                row.bits_ceil = static_cast<int>(std::ceil(row.bits));
                row.bits_rounded = static_cast<int>(std::lround(row.bits));
                row.savings_exact = single_antenna - row.bits;
                row.savings_approx = feedback_savings(m, n, p_db);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string scaling_table_csv(const std::vector<ScalingRow>& rows)
{
    std::string out = "m,n_rx,rate_gap,p_db,bits,bits_ceil,bits_rounded,savings_exact,savings_approx,status\n";
    for (const auto& r : rows) {
        out += std::to_string(r.m) + "," + std::to_string(r.n) + "," + fmt(r.rate_gap) + "," + fmt(r.p_db) + ",";
        if (r.feasible)
            out += fmt(r.bits) + "," + std::to_string(r.bits_ceil) + "," + std::to_string(r.bits_rounded) + "," +
                   fmt(r.savings_exact) + "," + fmt(r.savings_approx) + ",ok\n";
        else
            out += ",,,,,infeasible\n";
    }
    return out;
}

ValidateOutput run_validate(const RunConfig& cfg, unsigned threads, bool wrong_reference)
{
    validate_config(cfg);
    if (!cfg.seed)
        fail(ErrorCode::config, "validate: seed must be resolved");
    if (cfg.bits < 1 || cfg.bits > max_codebook_bits)
        fail(ErrorCode::config, "validate: bits must be in [1, " + std::to_string(max_codebook_bits) + "]");

    ValidateOutput out;
    out.all_pass = true;
    ojson j = manifest_header(cfg, "validate");
    j["wrong_reference"] = wrong_reference;
    ojson suites = ojson::array();
    for (int n : cfg.n_rx) {
        ValidationSuite s = run_validation(cfg.m, n, cfg.bits, cfg.samples, *cfg.seed, threads, wrong_reference);
        ojson sj;
        sj["m"] = s.m;
        sj["n_rx"] = s.n;
        sj["bits"] = s.bits;
        sj["samples"] = s.samples;
        ojson probe = ojson::array();
        for (const auto& c : s.probe)
            probe.push_back({c.real(), c.imag()});
        sj["probe"] = probe;
        ojson reports = ojson::array();
        for (const auto& r : s.reports)
            reports.push_back(report_json(r));
        sj["reports"] = reports;
        sj["pass"] = s.all_pass;
        suites.push_back(sj);
        out.all_pass = out.all_pass && s.all_pass;
        out.suites.push_back(std::move(s));
    }
    j["suites"] = suites;
    j["pass"] = out.all_pass;
    out.report_json = j.dump(2) + "\n";
    return out;
}

} // namespace limfb
