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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hems::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Index of a variable inside a Model.
struct VarId {
    std::uint32_t value = 0;

    constexpr std::size_t index() const { return value; }
    auto operator<=>(const VarId&) const = default;
};

enum class VarKind { kContinuous, kBinary };

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
    VarKind kind = VarKind::kContinuous;
    double lower = 0.0;
    double upper = kInfinity;
    std::string name;
};

struct Term {
    VarId var;
    double coef = 0.0;
};

struct LinearConstraint {
    std::vector<Term> terms;
    Sense sense = Sense::kLessEqual;
    double rhs = 0.0;
    std::string tag;
};

/// A minimization MILP over continuous and binary variables.
///
/// Terms referencing the same variable are merged when a constraint is added,
/// so every stored row has at most one entry per variable. A model is never
/// modified by the solvers.
class Model {
 public:
    /// Throws std::invalid_argument on NaN bounds, lower > upper, lower = +inf,
    /// upper = -inf, or binary bounds outside [0, 1].
    VarId add_variable(VarKind kind, double lower, double upper, std::string name);

    /// Throws std::invalid_argument on unknown variables or non-finite values.
    std::size_t add_constraint(std::span<const Term> terms, Sense sense, double rhs,
                               std::string tag);
    std::size_t add_constraint(std::initializer_list<Term> terms, Sense sense, double rhs,
                               std::string tag) {
        return add_constraint(std::span<const Term>(terms.begin(), terms.size()), sense, rhs,
                              std::move(tag));
    }

    void set_objective(VarId var, double coef);
    void add_objective(VarId var, double coef);
    void set_bounds(VarId var, double lower, double upper);

    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }
    std::size_t num_binaries() const;

    const Variable& variable(VarId var) const { return variables_.at(var.index()); }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }

    /// Dense objective, one coefficient per variable.
    const std::vector<double>& objective() const { return objective_; }
    /// Nonzero objective entries in variable order.
    std::vector<Term> objective_terms() const;

    double objective_value(std::span<const double> values) const;
    double row_activity(std::size_t row, std::span<const double> values) const;

    /// Largest violation of any bound or row, each normalized by (1 + |rhs|).
    double max_violation(std::span<const double> values) const;

 private:
    void check_var(VarId var) const;

    std::vector<Variable> variables_;
    std::vector<LinearConstraint> constraints_;
    std::vector<double> objective_;
};

}  // namespace hems::milp
