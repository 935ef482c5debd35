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

#include <ostream>
#include <string>

#include "hems/milp/model.hpp"

namespace hems::milp {

/// Writes `model` in CPLEX LP text format. Names are sanitized to the LP
/// identifier alphabet; the layout is documented in the README.
void write_lp(std::ostream& out, const Model& model);

std::string to_lp_string(const Model& model);

}  // namespace hems::milp
