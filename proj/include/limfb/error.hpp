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

#include <stdexcept>
#include <string>

namespace limfb {

enum class ErrorCode {
    invalid_argument = 1,
    dimension_mismatch,
    degenerate_channel,
    ill_conditioned,
    capacity,
    infeasible_target,
    config,
    io,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Carries the pivot-ratio condition estimate that tripped the threshold.
class IllConditionedError : public Error {
public:
    IllConditionedError(double condition_estimate, const std::string& what)
        : Error(ErrorCode::ill_conditioned, what), condition_estimate_(condition_estimate)
    {
    }

    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

} // namespace limfb
