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

#include "hems/formulation/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace hems {

namespace {

constexpr double kClamp = 1e-9;

StorageTrace zero_trace(std::size_t T) {
    const std::vector<double> z(T, 0.0);
    return StorageTrace{z, z, z, z, z};
}

}  // namespace

Schedule empty_schedule(const Scenario& s) {
    const std::size_t T = s.intervals();
    const std::vector<double> z(T, 0.0);
    Schedule out{z, z, z, z, zero_trace(T), zero_trace(T), z, {}, {}};
    for (const ApplianceSpec& app : s.appliances) {
        out.appliance_names.push_back(app.name);
        std::vector<int> dest(T, kNoLoad);
        for (std::size_t t = 0; t < T; ++t) {
            if (app.profile[t] > 0.0) dest[t] = static_cast<int>(t);
        }
        out.destination.push_back(std::move(dest));
    }
    out.served_load = landed_load(s, out);
    return out;
}

std::vector<double> landed_load(const Scenario& s, const Schedule& schedule) {
    const std::size_t T = s.intervals();
    std::vector<double> load(s.non_deferrable.begin(), s.non_deferrable.end());
    for (std::size_t a = 0; a < s.appliances.size() && a < schedule.destination.size(); ++a) {
        for (std::size_t src = 0; src < T && src < schedule.destination[a].size(); ++src) {
            const int dst = schedule.destination[a][src];
            if (dst >= 0 && static_cast<std::size_t>(dst) < T) load[static_cast<std::size_t>(dst)] += s.appliances[a].profile[src];
        }
    }
    return load;
}

Schedule extract_schedule(const Scenario& s, const VarMap& vars, const milp::Solution& solution) {
    if (solution.status != milp::SolveStatus::kOptimal) {
        throw std::invalid_argument("extract_schedule: solution status is " +
                                    std::string(milp::to_string(solution.status)));
    }
    auto value = [&](milp::VarId id) {
        const double v = solution.values.at(id.index());
        return std::abs(v) < kClamp ? 0.0 : v;
    };
    auto column = [&](const std::vector<milp::VarId>& ids) {
        std::vector<double> out;
        out.reserve(ids.size());
        for (milp::VarId id : ids) out.push_back(value(id));
        return out;
    };
    auto trace = [&](const std::optional<StorageVars>& sv) {
        if (!sv) return zero_trace(s.intervals());
        return StorageTrace{column(sv->charge), column(sv->discharge), column(sv->used), column(sv->sold),
                            column(sv->soe)};
    };

    Schedule out = empty_schedule(s);
    out.grid_buy = column(vars.grid_buy);
    out.grid_sell = column(vars.grid_sell);
    out.pv_used = column(vars.pv_used);
    out.pv_sold = column(vars.pv_sold);
    out.ess = trace(vars.ess);
    out.ev = trace(vars.ev);
    for (const ShiftVar& sh : vars.shifts) {
        if (value(sh.id) > 0.5) out.destination[sh.appliance][sh.source] = static_cast<int>(sh.destination);
    }
    out.served_load = landed_load(s, out);
    return out;
}

std::vector<double> schedule_to_assignment(const Scenario& s, const Formulation& f, const Schedule& schedule) {
    if (schedule.intervals() != s.intervals()) {
        throw std::invalid_argument("schedule has " + std::to_string(schedule.intervals()) + " intervals, scenario has " +
                                    std::to_string(s.intervals()));
    }
    std::vector<double> x(f.model.num_variables(), 0.0);
    const VarMap& v = f.vars;
    auto put = [&](const std::vector<milp::VarId>& ids, const std::vector<double>& values) {
        for (std::size_t t = 0; t < ids.size(); ++t) x[ids[t].index()] = values.at(t);
    };
    put(v.grid_buy, schedule.grid_buy);
    put(v.grid_sell, schedule.grid_sell);
    put(v.pv_used, schedule.pv_used);
    put(v.pv_sold, schedule.pv_sold);
    for (std::size_t t = 0; t < v.u_grid.size(); ++t) {
        x[v.u_grid[t].index()] = schedule.grid_sell[t] > schedule.grid_buy[t] ? 0.0 : 1.0;
    }
    auto storage = [&](const std::optional<StorageVars>& sv, const StorageTrace& tr) {
        if (!sv) return;
        put(sv->charge, tr.charge);
        put(sv->discharge, tr.discharge);
        put(sv->used, tr.used);
        put(sv->sold, tr.sold);
        put(sv->soe, tr.soe);
        for (std::size_t t = 0; t < sv->mode.size(); ++t) {
            if (sv->mode[t]) x[sv->mode[t]->index()] = tr.discharge[t] > tr.charge[t] ? 0.0 : 1.0;
        }
    };
    storage(v.ess, schedule.ess);
    storage(v.ev, schedule.ev);
    for (const ShiftVar& sh : v.shifts) {
        const int dst = schedule.destination.at(sh.appliance).at(sh.source);
        x[sh.id.index()] = dst == static_cast<int>(sh.destination) ? 1.0 : 0.0;
    }
    return x;
}

}  // namespace hems
