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
#include <stdexcept>
#include <string>

#include "hems/formulation/schedule.hpp"
#include "hems/milp/solver.hpp"
#include "hems/scenario/scenario.hpp"

namespace hems {

inline constexpr std::size_t kOracleMaxBinaries = 14;

class OracleTooLarge : public std::length_error {
 public:
    using std::length_error::length_error;
};

struct OracleResult {
    bool feasible = false;
    double objective = 0.0;
    Schedule schedule;
    std::vector<double> binaries;  // winning fixing, in model order
    std::size_t fixings = 0;       // combinations enumerated
    std::size_t lp_solves = 0;
};

/// Global optimum by fixing every binary combination and solving the
/// remaining LP. Among equal objectives the lexicographically smallest binary
/// vector wins. Throws OracleTooLarge beyond `max_binaries`.
OracleResult brute_force_optimum(const Scenario& scenario, std::size_t max_binaries = kOracleMaxBinaries,
                                 const milp::LpOptions& lp = {});

}  // namespace hems
