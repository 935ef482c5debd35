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
#include <string>

#include "hems/formulation/schedule.hpp"

namespace hems {

inline constexpr const char* kScheduleCsvVersion = "# hems-schedule v1";

void write_schedule_csv(std::ostream& out, const Schedule& schedule);

/// Throws ScenarioError with the line number on malformed input.
Schedule read_schedule_csv(std::istream& in, const std::string& source);
Schedule read_schedule_csv_file(const std::filesystem::path& path);

}  // namespace hems
