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
// limfb command-line front end. Talks to the library only through limfb.h.

#include "limfb/limfb.h"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

enum ExitCode { exit_ok = 0, exit_config = 1, exit_validation = 2, exit_io = 3 };

int exit_for(limfb_status status)
{
    return status == LIMFB_ERR_IO ? exit_io : exit_config;
}

int report(limfb_status status)
{
    std::cerr << "limfb: " << limfb_status_name(status) << ": " << limfb_last_error() << "\n";
    return exit_for(status);
}

bool write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "limfb: I/O error: cannot write '" << path.string() << "'\n";
        return false;
    }
    out << contents;
    out.close();
    if (!out) {
        std::cerr << "limfb: I/O error: failed writing '" << path.string() << "'\n";
        return false;
    }
    return true;
}

struct RunOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::optional<std::uint64_t> trials;
    bool wrong_reference = false;
};

struct ConfigHandle {
    limfb_config* ptr = nullptr;
    ~ConfigHandle() { limfb_config_free(ptr); }
};

// Loads the config and applies --seed / --trials. Returns an exit code.
int prepare_config(const RunOptions& opt, bool trials_are_samples, ConfigHandle& cfg)
{
    if (limfb_status st = limfb_config_load(opt.config_path.c_str(), &cfg.ptr); st != LIMFB_OK)
        return report(st);
    if (opt.seed) {
        limfb_config_set_seed(cfg.ptr, *opt.seed);
    } else if (!limfb_config_has_seed(cfg.ptr)) {
        std::random_device rd;
        const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
        limfb_config_set_seed(cfg.ptr, seed);
        std::cerr << "limfb: seed " << seed << " (auto-generated)\n";
    }
    if (opt.trials) {
        const limfb_status st = trials_are_samples ? limfb_config_set_samples(cfg.ptr, *opt.trials)
                                                   : limfb_config_set_trials(cfg.ptr, *opt.trials);
        if (st != LIMFB_OK)
            return report(st);
    }
    return exit_ok;
}

std::string timing_json(double seconds, unsigned threads)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "{\n  \"wall_clock_s\": %.3f,\n  \"threads\": %u\n}\n", seconds, threads);
    return buf;
}

int cmd_sweep(const RunOptions& opt)
{
    ConfigHandle cfg;
    if (int rc = prepare_config(opt, false, cfg); rc != exit_ok)
        return rc;

    const auto start = std::chrono::steady_clock::now();
    limfb_sweep* sweep = nullptr;
    if (limfb_status st = limfb_sweep_run(cfg.ptr, opt.threads, &sweep); st != LIMFB_OK)
        return report(st);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (std::size_t i = 0; i < limfb_sweep_warning_count(sweep); ++i)
        std::cerr << "limfb: warning: " << limfb_sweep_warning(sweep, i) << "\n";
    std::cout << limfb_sweep_csv(sweep);

    const std::filesystem::path dir(opt.out_dir);
    const bool ok = write_file(dir / "sweep.csv", limfb_sweep_csv(sweep)) &&
                    write_file(dir / "manifest.json", limfb_sweep_manifest(sweep)) &&
                    write_file(dir / "timing.json", timing_json(seconds, opt.threads));
    limfb_sweep_free(sweep);
    return ok ? exit_ok : exit_io;
}

int cmd_validate(const RunOptions& opt)
{
    ConfigHandle cfg;
    if (int rc = prepare_config(opt, true, cfg); rc != exit_ok)
        return rc;

    limfb_validation* val = nullptr;
    if (limfb_status st = limfb_validate_run(cfg.ptr, opt.threads, opt.wrong_reference ? 1 : 0, &val); st != LIMFB_OK)
        return report(st);
    const bool passed = limfb_validation_passed(val) != 0;
    std::cout << limfb_validation_json(val);
    const bool ok = write_file(std::filesystem::path(opt.out_dir) / "validation.json", limfb_validation_json(val));
    limfb_validation_free(val);
    if (!ok)
        return exit_io;
    std::cerr << "limfb: validation " << (passed ? "passed" : "FAILED") << "\n";
    return passed ? exit_ok : exit_validation;
}

struct ScalingOptions {
    int m = 10;
    std::vector<int> n_list{1, 2, 3};
    double rate_gap = 1.0;
    std::vector<double> p_db{10.0};
    std::string out_dir;
};

int cmd_scaling_table(const ScalingOptions& opt)
{
    char* csv = nullptr;
    const limfb_status st = limfb_scaling_table_csv(opt.m, opt.n_list.data(), opt.n_list.size(), opt.rate_gap,
                                                    opt.p_db.data(), opt.p_db.size(), &csv);
    if (st != LIMFB_OK)
        return report(st);
    const std::string text(csv);
    limfb_string_free(csv);
    std::cout << text;
    if (!opt.out_dir.empty() && !write_file(std::filesystem::path(opt.out_dir) / "scaling_table.csv", text))
        return exit_io;
    return exit_ok;
}

void add_run_options(CLI::App* sub, RunOptions& opt)
{
    sub->add_option("--config", opt.config_path, "Config file (key = value), or a manifest.json to replay")
        ->required();
    sub->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "Override the config seed");
    sub->add_option("--threads", opt.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
    sub->add_option("--trials", opt.trials, "Override trials (sweep) or samples (validate)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"limfb: limited-feedback MIMO broadcast simulation"};
    app.set_version_flag("--version", std::string(limfb_version()));
    app.require_subcommand(1);

    RunOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sum-rate sweep over SNR and receive antennas");
    add_run_options(sweep, sweep_opt);

    RunOptions validate_opt;
    auto* validate = app.add_subcommand("validate", "Distributional validation suites");
    add_run_options(validate, validate_opt);
    validate->add_flag("--wrong-reference", validate_opt.wrong_reference,
                       "Debug: compare the effective norm against a shifted Gamma shape");

    ScalingOptions scaling_opt;
    auto* scaling = app.add_subcommand("scaling-table", "Feedback bits needed for a target rate gap");
    scaling->add_option("--m", scaling_opt.m, "Transmit antennas")->capture_default_str();
    scaling->add_option("--n", scaling_opt.n_list, "Receive antennas, comma separated")->delimiter(',');
    scaling->add_option("--r", scaling_opt.rate_gap, "Target per-user rate gap, bps/Hz")->capture_default_str();
    scaling->add_option("--pdb", scaling_opt.p_db, "SNR values in dB, comma separated")->delimiter(',');
    scaling->add_option("--out", scaling_opt.out_dir, "Also write scaling_table.csv here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    if (*sweep)
        return cmd_sweep(sweep_opt);
    if (*validate)
        return cmd_validate(validate_opt);
    return cmd_scaling_table(scaling_opt);
}
