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

#include "hems/validation/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hems/formulation/formulation.hpp"

namespace hems {

namespace {

constexpr double kImprovement = 1e-9;

}  // namespace

OracleResult brute_force_optimum(const Scenario& scenario, std::size_t max_binaries, const milp::LpOptions& lp) {
    const Formulation f = build_model(scenario);
    const milp::Model& m = f.model;
    std::vector<std::size_t> bins;
    for (std::size_t j = 0; j < m.num_variables(); ++j) {
        if (m.variables()[j].kind == milp::VarKind::kBinary) bins.push_back(j);
    }
    const std::size_t n = bins.size();
    if (n > max_binaries) {
        throw OracleTooLarge("brute_force_optimum: " + std::to_string(n) + " binaries (" + std::to_string(m.num_variables()) +
                             " variables, " + std::to_string(m.num_constraints()) + " rows) exceed the limit of " +
                             std::to_string(max_binaries));
    }

    // Rows over binaries only are decided by the fixing itself; skip the LP when one fails.
    std::vector<std::size_t> binary_rows;
    for (std::size_t i = 0; i < m.num_constraints(); ++i) {
        const auto& terms = m.constraints()[i].terms;
        if (!terms.empty() && std::all_of(terms.begin(), terms.end(), [&](const milp::Term& t) {
                return m.variables()[t.var.index()].kind == milp::VarKind::kBinary;
            })) {
            binary_rows.push_back(i);
        }
    }

    std::vector<double> lower, upper;
    for (const milp::Variable& v : m.variables()) {
        lower.push_back(v.lower);
        upper.push_back(v.upper);
    }

    OracleResult out;
    milp::Solution best;
    std::vector<double> x(m.num_variables(), 0.0);
    // The first binary is the most significant bit, so counting upward walks
    // the fixings in lexicographic order.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ++out.fixings;
        bool ok = true;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = static_cast<double>((mask >> (n - 1 - k)) & 1u);
            const milp::Variable& var = m.variables()[bins[k]];
            if (v < var.lower || v > var.upper) ok = false;
            lower[bins[k]] = upper[bins[k]] = x[bins[k]] = v;
        }
        for (std::size_t i : binary_rows) {
            if (!ok) break;
            const auto& c = m.constraints()[i];
            const double lhs = m.row_activity(i, x);
            switch (c.sense) {
                case milp::Sense::kLessEqual: ok = lhs <= c.rhs + 1e-9; break;
                case milp::Sense::kGreaterEqual: ok = lhs >= c.rhs - 1e-9; break;
                case milp::Sense::kEqual: ok = std::abs(lhs - c.rhs) <= 1e-9; break;
            }
        }
        if (!ok) continue;
        ++out.lp_solves;
        milp::Solution s = milp::solve_lp(m, lower, upper, lp);
        if (s.status != milp::SolveStatus::kOptimal) continue;
        if (!out.feasible || s.objective < best.objective - kImprovement) {
            out.feasible = true;
            out.binaries.clear();
            for (std::size_t j : bins) out.binaries.push_back(s.values[j]);
            best = std::move(s);
        }
    }
    if (out.feasible) {
        out.objective = best.objective;
        out.schedule = extract_schedule(scenario, f.vars, best);
    }
    return out;
}

}  // namespace hems
