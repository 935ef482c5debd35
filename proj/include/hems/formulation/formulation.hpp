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
#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "hems/milp/model.hpp"
#include "hems/milp/solver.hpp"
#include "hems/scenario/scenario.hpp"

namespace hems {

/// Constraint families shared by the model builder and the auditor.
enum class Family { kBalance, kEss, kEv, kPv, kExport, kExclusivity, kShifting };

inline constexpr std::array<Family, 7> kAllFamilies{Family::kBalance, Family::kEss, Family::kEv, Family::kPv,
                                                    Family::kExport, Family::kExclusivity, Family::kShifting};

std::string_view to_string(Family family);

struct StorageVars {
    std::vector<milp::VarId> charge, discharge, used, sold, soe;
    /// Charging-mode binary; empty where the device is unavailable.
    std::vector<std::optional<milp::VarId>> mode;
};

/// One shift binary: the block of `appliance` scheduled at `source` runs at `destination`.
struct ShiftVar {
    std::size_t appliance = 0;
    std::size_t source = 0;
    std::size_t destination = 0;
    milp::VarId id;
};

struct VarMap {
    std::vector<milp::VarId> grid_buy, grid_sell, pv_used, pv_sold, u_grid;
    std::optional<StorageVars> ess, ev;
    /// Ordered by appliance, then source, then destination.
    std::vector<ShiftVar> shifts;
};

struct Formulation {
    milp::Model model;
    VarMap vars;
    /// Family of every row, indexed like model.constraints().
    std::vector<Family> row_family;
};

struct BuildOptions {
    /// Rows of these families are left out. Used to locate infeasibility.
    std::set<Family> omit;
};

Formulation build_model(const Scenario& scenario, const BuildOptions& options = {});

/// Families whose removal alone makes the problem feasible. Empty when the
/// problem is feasible or no single family is responsible.
std::vector<Family> diagnose_infeasibility(const Scenario& scenario, const milp::MilpOptions& options = {});

}  // namespace hems
