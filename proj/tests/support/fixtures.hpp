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

// Hand-built scenarios and a solve helper shared by the test binaries.

#pragma once

#include <stdexcept>

#include "hems/formulation/formulation.hpp"
#include "hems/formulation/schedule.hpp"
#include "hems/milp/solver.hpp"
#include "hems/scenario/scenario.hpp"

namespace hems::testing {

struct Solved {
    Formulation formulation;
    milp::Solution solution;
    Schedule schedule;
};

inline Solved solve(const Scenario& s, const milp::MilpOptions& opt = {}) {
    Solved out{build_model(s), {}, {}};
    out.solution = milp::solve_milp(out.formulation.model, opt);
    if (out.solution.optimal()) out.schedule = extract_schedule(s, out.formulation.vars, out.solution);
    return out;
}

/// One hour with 2 kW of load and three 1 kW sources (PV, battery, vehicle)
/// that cost nothing to use. Serving the load from all three leaves exactly
/// 1 kWh to export, and the only thing separating the sources is the
/// export penalty.
inline Scenario priority_scenario() {
    Scenario s;
    s.name = "export-priority";
    s.grid = {1, 1.0};
    s.tariff = {{10.0}, {3.0}};
    s.non_deferrable = {2.0};
    s.pv_gen = {1.0};
    StorageSpec unit_store{1.0, 1.0, 1.0, 1.0, 0.0, 2.0, 1.0};
    s.ess = EssSpec{unit_store, false};
    EVSpec ev;
    ev.storage = {1.0, 1.0, 1.0, 1.0, 0.0, 1.25, 1.0};
    ev.arrival = 0;
    ev.departure = 0;
    ev.require_full_at_departure = false;
    s.ev = ev;
    validate(s);
    return s;
}

/// A scenario with one appliance and a single load block at `source`.
inline Scenario single_block(std::size_t T, std::size_t source, double kw, double adt_hours) {
    Scenario s;
    s.grid = {T, 1.0};
    for (std::size_t t = 0; t < T; ++t) {
        s.tariff.buy.push_back(20.0 - static_cast<double>(t));
        s.tariff.sell.push_back(3.0);
    }
    s.non_deferrable.assign(T, 0.1);
    s.pv_gen.assign(T, 0.0);
    ApplianceSpec app{"washer", std::vector<double>(T, 0.0), adt_hours};
    app.profile.at(source) = kw;
    s.appliances.push_back(app);
    validate(s);
    return s;
}

}  // namespace hems::testing
