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
#include <string>
#include <vector>

#include "hems/formulation/formulation.hpp"
#include "hems/milp/solver.hpp"
#include "hems/scenario/scenario.hpp"

namespace hems {

/// Destination marker for an interval where an appliance has no load.
inline constexpr int kNoLoad = -1;

struct StorageTrace {
    std::vector<double> charge, discharge, used, sold, soe;
};

/// Physical quantities per interval, all powers in kW and energies in kWh.
struct Schedule {
    std::vector<double> grid_buy, grid_sell, pv_used, pv_sold;
    StorageTrace ess, ev;
    std::vector<double> served_load;
    std::vector<std::string> appliance_names;
    /// destination[a][t]: interval where the block of appliance a scheduled at t runs.
    std::vector<std::vector<int>> destination;

    std::size_t intervals() const { return grid_buy.size(); }
};

/// Zero-filled schedule shaped for the scenario, every block left in place.
Schedule empty_schedule(const Scenario& scenario);

Schedule extract_schedule(const Scenario& scenario, const VarMap& vars, const milp::Solution& solution);

/// Variable assignment that represents the schedule in the model, with
/// binaries chosen to match the operating modes. Used to compare audits with
/// row residuals.
std::vector<double> schedule_to_assignment(const Scenario& scenario, const Formulation& formulation,
                                           const Schedule& schedule);

/// Non-deferrable load plus every block that lands at t under the schedule's destinations.
std::vector<double> landed_load(const Scenario& scenario, const Schedule& schedule);

}  // namespace hems
