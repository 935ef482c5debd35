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

#include <array>
#include <string_view>

#include "hems/scenario/scenario.hpp"

namespace hems {

/// Device configurations of the case study: A loads only, B adds PV, C adds
/// the stationary battery, D adds the vehicle.
enum class CaseId { kA, kB, kC, kD };

inline constexpr std::array<CaseId, 4> kAllCases{CaseId::kA, CaseId::kB, CaseId::kC, CaseId::kD};

std::string_view to_string(CaseId id);
CaseId parse_case(std::string_view text);  // throws std::invalid_argument

/// Derives a case scenario from a seed that carries every device. With
/// `dsm` off each appliance's delay allowance is zeroed. An explicit big-M in
/// the seed is kept; otherwise it is re-derived for the reduced device set.
Scenario synth_case(CaseId id, bool dsm, const Scenario& seed);

}  // namespace hems
