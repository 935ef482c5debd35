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

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "hems/scenario/scenario.hpp"

namespace hems {

inline constexpr std::string_view kScenarioSchema = "hems-scenario/1";

/// Comma-separated table with a header line. Lines starting with '#' and blank
/// lines are skipped. Every error names the source and the 1-based line.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // one per row

    std::size_t column_index(std::string_view name) const;  // throws if absent
    bool has_column(std::string_view name) const;
    double number(std::size_t row, std::size_t column) const;
    std::vector<double> numeric_column(std::string_view name) const;

    std::string source;
};

CsvTable read_csv(std::istream& in, std::string source);
CsvTable read_csv_file(const std::filesystem::path& path);

/// Parses a scenario document (JSON). Relative CSV references resolve
/// against `base_dir`. Throws ScenarioError.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(std::istream& in, const std::filesystem::path& base_dir = {});
Scenario load_scenario_file(const std::filesystem::path& path);

/// Self-contained document: every series is written inline.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace hems
