// Copyright 2026 The hems-scheduler Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hems/milp/solver.hpp"

namespace hems::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::filesystem::path scenario;
    /// Empty runs the scenario as written; otherwise A, B, C, D or all.
    std::string case_selector;
    /// on, off or both.
    std::string dsm = "on";
    std::filesystem::path output_dir = ".";
    milp::MilpOptions solver;
    std::optional<double> origin_hour;
    bool dump_lp = false;
};

struct ValidateConfig {
    std::filesystem::path scenario;
    std::filesystem::path schedule;
    std::string case_selector;
    std::string dsm = "on";
    std::optional<double> origin_hour;
    std::optional<std::filesystem::path> report;
};

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hems::cli
