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

#include "hems/scenario/cases.hpp"

#include <stdexcept>
#include <string>

namespace hems {

std::string_view to_string(CaseId id) {
    switch (id) {
        case CaseId::kA: return "A";
        case CaseId::kB: return "B";
        case CaseId::kC: return "C";
        case CaseId::kD: return "D";
    }
    return "?";
}

CaseId parse_case(std::string_view text) {
    if (text == "A" || text == "a") return CaseId::kA;
    if (text == "B" || text == "b") return CaseId::kB;
    if (text == "C" || text == "c") return CaseId::kC;
    if (text == "D" || text == "d") return CaseId::kD;
    throw std::invalid_argument("unknown case '" + std::string(text) + "' (expected A, B, C or D)");
}

Scenario synth_case(CaseId id, bool dsm, const Scenario& seed) {
    Scenario s = seed;
    s.name = seed.name + (seed.name.empty() ? "" : "/") + "case" + std::string(to_string(id)) +
             (dsm ? "/dsm-on" : "/dsm-off");
    if (id == CaseId::kA) s.pv_gen.assign(s.intervals(), 0.0);
    if (id == CaseId::kA || id == CaseId::kB) s.ess.reset();
    if (id != CaseId::kD) s.ev.reset();
    if (id == CaseId::kC || id == CaseId::kD) {
        if (!seed.ess) throw ScenarioError("ess", "case " + std::string(to_string(id)) + " needs a battery in the seed");
    }
    if (id == CaseId::kD && !seed.ev) throw ScenarioError("ev", "case D needs a vehicle in the seed");
    if (!dsm) {
        for (ApplianceSpec& app : s.appliances) app.adt_hours = 0.0;
    }
    validate(s);
    return s;
}

}  // namespace hems
