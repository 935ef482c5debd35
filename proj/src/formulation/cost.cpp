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

#include "hems/formulation/cost.hpp"

#include <stdexcept>

namespace hems {

CostBreakdown compute_cost(const Schedule& schedule, const Tariff& tariff, const Penalties& penalties, double dt) {
    const std::size_t T = schedule.intervals();
    if (tariff.buy.size() != T || tariff.sell.size() != T) {
        throw std::invalid_argument("compute_cost: tariff has " + std::to_string(tariff.buy.size()) +
                                    " intervals, schedule has " + std::to_string(T));
    }
    CostBreakdown c;
    for (std::size_t t = 0; t < T; ++t) {
        c.bill += schedule.grid_buy[t] * tariff.buy[t] * dt - schedule.grid_sell[t] * tariff.sell[t] * dt;
        c.penalty += (penalties.pv * schedule.pv_sold[t] + penalties.ess * schedule.ess.sold[t] +
                      penalties.ev * schedule.ev.sold[t]) *
                     dt;
    }
    c.objective = c.bill + c.penalty;
    return c;
}

double exported_energy(const Schedule& schedule, double dt) {
    double total = 0.0;
    for (double p : schedule.grid_sell) total += p * dt;
    return total;
}

}  // namespace hems
