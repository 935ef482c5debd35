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
#include <optional>
#include <string>
#include <vector>

#include "hems/formulation/formulation.hpp"
#include "hems/formulation/schedule.hpp"
#include "hems/scenario/scenario.hpp"

namespace hems {

inline constexpr double kAuditTolerance = 1e-6;

struct Violation {
    std::string rule;
    std::optional<std::size_t> interval;
    std::string appliance;
    double amount = 0.0;  // absolute
    double rhs = 0.0;
};

struct FamilyResult {
    Family family = Family::kBalance;
    bool pass = true;
    std::size_t rows_checked = 0;
    double worst_violation = 0.0;
    std::string worst_location;
    std::vector<Violation> violations;
};

struct AuditReport {
    double tolerance = kAuditTolerance;
    std::vector<FamilyResult> families;

    bool pass() const;
    const FamilyResult& family(Family f) const;
    std::vector<Family> failing() const;
};

/// Re-evaluates every constraint family from scenario data and schedule
/// arithmetic alone. A row fails when its violation exceeds tolerance * (1 + |rhs|).
/// Throws std::invalid_argument when the schedule is not shaped for the scenario.
AuditReport audit(const Scenario& scenario, const Schedule& schedule, double tolerance = kAuditTolerance);

std::string to_json(const AuditReport& report);

}  // namespace hems
