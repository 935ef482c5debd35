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

#include "hems/formulation/schedule.hpp"
#include "hems/scenario/scenario.hpp"

namespace hems {

/// Costs in cents.
struct CostBreakdown {
    double bill = 0.0;
    double penalty = 0.0;
    double objective = 0.0;
};

CostBreakdown compute_cost(const Schedule& schedule, const Tariff& tariff, const Penalties& penalties, double dt);

double exported_energy(const Schedule& schedule, double dt);

}  // namespace hems
