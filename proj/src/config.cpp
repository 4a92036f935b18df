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
#include "limfb/config.hpp"

#include "limfb/analysis.hpp"
#include "limfb/error.hpp"
#include "limfb/quantization.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace limfb {

namespace {

using Locator = std::function<std::string(const std::string& key)>;

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

template <typename T>
bool parse_number(const std::string& text, T& out)
{
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

void validate_with(const RunConfig& cfg, const Locator& where)
{
    auto bad = [&](const std::string& key, const std::string& msg) { fail(ErrorCode::config, where(key) + msg); };
    if (cfg.m < 2 || cfg.m > 64)
        bad("m", "m must be in [2, 64]");
    if (cfg.n_rx.empty())
        bad("n_rx", "n_rx list is empty");
    std::set<int> seen;
    for (int n : cfg.n_rx) {
        if (n < 1 || n > cfg.m)
            bad("n_rx", "each n_rx must satisfy 1 <= n_rx <= m (got " + std::to_string(n) + ")");
        if (!seen.insert(n).second)
            bad("n_rx", "duplicate n_rx value " + std::to_string(n));
    }
    if (cfg.snr_db.empty())
        bad("snr_db", "snr_db list is empty");
    for (double p : cfg.snr_db)
        if (!std::isfinite(p))
            bad("snr_db", "snr_db values must be finite");
    if (cfg.trials < 1 || cfg.trials >= fixed_codebook_trial)
        bad("trials", "trials must be in [1, 2^32 - 2]");
    if (cfg.samples < 1000 || cfg.samples >= fixed_codebook_trial)
        bad("samples", "samples must be in [1000, 2^32 - 2]");
    if (cfg.bits_rule == BitsRule::fixed) {
        if (cfg.bits < 1 || cfg.bits > max_codebook_bits)
            bad("bits", "bits must be in [1, " + std::to_string(max_codebook_bits) + "]");
    } else {
        if (!(cfg.rate_gap > 0.0) || !std::isfinite(cfg.rate_gap))
            bad("rate_gap", "rate_gap must be a positive number");
        for (int n : cfg.n_rx)
            if (n >= cfg.m)
                bad("n_rx", "bits_rule = scaling needs every n_rx < m");
        for (int n : cfg.n_rx) {
            if (scaling_constant(cfg.m, n, cfg.rate_gap) <= 0.0)
                bad("rate_gap", "rate_gap " + std::to_string(cfg.rate_gap) + " is infeasible for m = " +
                                    std::to_string(cfg.m) + ", n_rx = " + std::to_string(n) +
                                    " (below the " + std::to_string(delta_a(cfg.m, n)) + " bps/Hz floor)");
            for (double p : cfg.snr_db)
                if (std::ceil(bits_required(ScalingInputs{cfg.m, n, p, cfg.rate_gap})) > max_codebook_bits)
                    bad("snr_db", "scaling rule needs more than " + std::to_string(max_codebook_bits) +
                                      " bits at " + std::to_string(p) + " dB for n_rx = " + std::to_string(n));
        }
    }
}

} // namespace

void validate_config(const RunConfig& cfg)
{
    validate_with(cfg, [](const std::string&) { return std::string(); });
}

RunConfig parse_config(std::string_view text, const std::string& source)
{
    static const std::set<std::string> known = {"m",       "n_rx", "snr_db",  "bits_rule", "bits",
                                                 "rate_gap", "trials", "samples", "seed",      "codebook_policy"};
    std::map<std::string, std::pair<std::string, int>> entries;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    auto at = [&](int line) { return source + ":" + std::to_string(line) + ": "; };
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::config, at(line_no) + "expected 'key = value'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key))
            fail(ErrorCode::config, at(line_no) + "unknown key '" + key + "'");
        if (value.empty())
            fail(ErrorCode::config, at(line_no) + "missing value for '" + key + "'");
        if (entries.count(key))
            fail(ErrorCode::config, at(line_no) + "duplicate key '" + key + "' (first set on line " +
                                        std::to_string(entries[key].second) + ")");
        entries[key] = {value, line_no};
    }

    RunConfig cfg;
    for (const auto& [key, entry] : entries) {
        const auto& [value, line] = entry;
        auto bad = [&, line = line](const std::string& msg) { fail(ErrorCode::config, at(line) + msg); };
        auto as_int = [&](const std::string& v) {
            int out = 0;
            if (!parse_number(v, out))
                bad("'" + v + "' is not an integer");
            return out;
        };
        auto as_u64 = [&](const std::string& v) {
            std::uint64_t out = 0;
            if (!parse_number(v, out))
                bad("'" + v + "' is not a non-negative integer");
            return out;
        };
        auto as_double = [&](const std::string& v) {
            double out = 0.0;
            if (!parse_number(v, out))
                bad("'" + v + "' is not a number");
            return out;
        };

        if (key == "m") {
            cfg.m = as_int(value);
        } else if (key == "n_rx") {
            cfg.n_rx.clear();
            for (const auto& v : split_list(value))
                cfg.n_rx.push_back(as_int(v));
        } else if (key == "snr_db") {
            cfg.snr_db.clear();
            for (const auto& v : split_list(value))
                cfg.snr_db.push_back(as_double(v));
        } else if (key == "bits_rule") {
            const std::string v = lower(value);
            if (v == "fixed")
                cfg.bits_rule = BitsRule::fixed;
            else if (v == "scaling")
                cfg.bits_rule = BitsRule::scaling;
            else
                bad("bits_rule must be 'fixed' or 'scaling'");
        } else if (key == "bits") {
            cfg.bits = as_int(value);
        } else if (key == "rate_gap") {
            cfg.rate_gap = as_double(value);
        } else if (key == "trials") {
            cfg.trials = as_u64(value);
        } else if (key == "samples") {
            cfg.samples = as_u64(value);
        } else if (key == "seed") {
            cfg.seed = as_u64(value);
        } else if (key == "codebook_policy") {
            const std::string v = lower(value);
            if (v == "per_block")
                cfg.codebook_policy = CodebookPolicy::per_block;
            else if (v == "fixed")
                cfg.codebook_policy = CodebookPolicy::fixed;
            else
                bad("codebook_policy must be 'per_block' or 'fixed'");
        }
    }

    validate_with(cfg, [&](const std::string& key) {
        const auto it = entries.find(key);
        return it == entries.end() ? source + ": " : at(it->second.second);
    });
    return cfg;
}

std::string config_to_json(const RunConfig& cfg)
{
    nlohmann::ordered_json j;
    j["m"] = cfg.m;
    j["n_rx"] = cfg.n_rx;
    j["snr_db"] = cfg.snr_db;
    j["bits_rule"] = to_string(cfg.bits_rule);
    j["bits"] = cfg.bits;
    j["rate_gap"] = cfg.rate_gap;
    j["trials"] = cfg.trials;
    j["samples"] = cfg.samples;
    if (cfg.seed)
        j["seed"] = *cfg.seed;
    else
        j["seed"] = nullptr;
    j["codebook_policy"] = to_string(cfg.codebook_policy);
    return j.dump();
}

RunConfig config_from_json(std::string_view json, const std::string& source)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::config, source + ": invalid JSON: " + e.what());
    }
    if (j.contains("config"))
        j = j["config"];
    RunConfig cfg;
    try {
        cfg.m = j.at("m").get<int>();
        cfg.n_rx = j.at("n_rx").get<std::vector<int>>();
        cfg.snr_db = j.at("snr_db").get<std::vector<double>>();
        const auto rule = j.at("bits_rule").get<std::string>();
        if (rule != "fixed" && rule != "scaling")
            fail(ErrorCode::config, source + ": bits_rule must be 'fixed' or 'scaling'");
        cfg.bits_rule = rule == "fixed" ? BitsRule::fixed : BitsRule::scaling;
        cfg.bits = j.at("bits").get<int>();
        cfg.rate_gap = j.at("rate_gap").get<double>();
        cfg.trials = j.at("trials").get<std::uint64_t>();
        cfg.samples = j.at("samples").get<std::uint64_t>();
        if (!j.at("seed").is_null())
            cfg.seed = j.at("seed").get<std::uint64_t>();
        const auto policy = j.at("codebook_policy").get<std::string>();
        if (policy != "per_block" && policy != "fixed")
            fail(ErrorCode::config, source + ": codebook_policy must be 'per_block' or 'fixed'");
        cfg.codebook_policy = policy == "fixed" ? CodebookPolicy::fixed : CodebookPolicy::per_block;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::config, source + ": " + e.what());
    }
    validate_with(cfg, [&](const std::string& key) { return source + ": " + key + ": "; });
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::io, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const bool is_json = path.size() >= 5 && lower(path.substr(path.size() - 5)) == ".json";
    return is_json ? config_from_json(buf.str(), path) : parse_config(buf.str(), path);
}

ExperimentConfig experiment_for(const RunConfig& cfg, int n_rx)
{
    if (!cfg.seed)
        fail(ErrorCode::config, "seed must be resolved before building an experiment");
    ExperimentConfig e;
    e.m = cfg.m;
    e.n = n_rx;
    e.snr_db = cfg.snr_db;
    e.bits_rule = cfg.bits_rule;
    e.bits = cfg.bits;
    e.rate_gap = cfg.rate_gap;
    e.trials = cfg.trials;
    e.seed = *cfg.seed;
    e.codebook_policy = cfg.codebook_policy;
    return e;
}

} // namespace limfb
