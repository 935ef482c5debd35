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
#include <span>
#include <string_view>
#include <vector>

#include "hems/milp/model.hpp"

namespace hems::milp {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(SolveStatus status);

/// Where a variable sits in the final simplex basis.
enum class BasisStatus { kBasic, kAtLower, kAtUpper, kFree, kFixed };

struct Solution {
    SolveStatus status = SolveStatus::kInfeasible;
    std::vector<double> values;
    double objective = 0.0;
    std::size_t nodes_explored = 0;
    std::size_t lp_iterations = 0;

    // Filled by solve_lp only, in the units of the unscaled model.
    std::vector<double> row_duals;
    std::vector<double> reduced_costs;
    std::vector<BasisStatus> basis;

    bool optimal() const { return status == SolveStatus::kOptimal; }
};

struct LpOptions {
    double feasibility_tol = 1e-7;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    std::size_t iteration_limit = 50'000;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    std::size_t degenerate_stall_limit = 100;
    bool scale_rows = true;
};

enum class BranchRule { kMostFractional };
enum class NodeOrder { kBestBound };

struct MilpOptions {
    double integrality_tol = 1e-6;
    double gap_tol = 1e-9;
    std::size_t node_limit = 1'000'000;
    BranchRule branch_rule = BranchRule::kMostFractional;
    NodeOrder node_order = NodeOrder::kBestBound;
    LpOptions lp;
};

/// Solves the LP relaxation of `model` with a bounded-variable primal simplex.
Solution solve_lp(const Model& model, const LpOptions& options = {});

/// Same as solve_lp but with the variable bounds replaced by `lower`/`upper`.
Solution solve_lp(const Model& model, std::span<const double> lower,
                  std::span<const double> upper, const LpOptions& options = {});

/// Branch-and-bound over the binary variables of `model`.
///
/// On success the returned values come from a final LP with every binary fixed
/// to its rounded incumbent value, so binaries are exactly 0 or 1.
Solution solve_milp(const Model& model, const MilpOptions& options = {});

}  // namespace hems::milp
