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

#include "hems/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hems::milp {

namespace {

void check_bounds(VarKind kind, double lower, double upper, const std::string& name) {
    if (std::isnan(lower) || std::isnan(upper)) {
        throw std::invalid_argument("variable '" + name + "': NaN bound");
    }
    if (lower == kInfinity || upper == -kInfinity) {
        throw std::invalid_argument("variable '" + name + "': non-finite bound on the wrong side");
    }
    if (lower > upper) {
        throw std::invalid_argument("variable '" + name + "': lower bound exceeds upper bound");
    }
    if (kind == VarKind::kBinary && (lower < 0.0 || upper > 1.0)) {
        throw std::invalid_argument("variable '" + name + "': binary bounds must lie in [0, 1]");
    }
}

}  // namespace

VarId Model::add_variable(VarKind kind, double lower, double upper, std::string name) {
    check_bounds(kind, lower, upper, name);
    VarId id{static_cast<std::uint32_t>(variables_.size())};
    variables_.push_back(Variable{kind, lower, upper, std::move(name)});
    objective_.push_back(0.0);
    return id;
}

std::size_t Model::add_constraint(std::span<const Term> terms, Sense sense, double rhs,
                                  std::string tag) {
    if (!std::isfinite(rhs)) {
        throw std::invalid_argument("constraint '" + tag + "': non-finite right-hand side");
    }
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (const Term& t : terms) {
        check_var(t.var);
        if (!std::isfinite(t.coef)) {
            throw std::invalid_argument("constraint '" + tag + "': non-finite coefficient");
        }
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const Term& m) { return m.var == t.var; });
        if (it == merged.end()) {
            merged.push_back(t);
        } else {
            it->coef += t.coef;
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
    std::sort(merged.begin(), merged.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    constraints_.push_back(LinearConstraint{std::move(merged), sense, rhs, std::move(tag)});
    return constraints_.size() - 1;
}

void Model::set_objective(VarId var, double coef) {
    check_var(var);
    if (!std::isfinite(coef)) {
        throw std::invalid_argument("non-finite objective coefficient");
    }
    objective_[var.index()] = coef;
}

void Model::add_objective(VarId var, double coef) {
    check_var(var);
    set_objective(var, objective_[var.index()] + coef);
}

void Model::set_bounds(VarId var, double lower, double upper) {
    check_var(var);
    Variable& v = variables_[var.index()];
    check_bounds(v.kind, lower, upper, v.name);
    v.lower = lower;
    v.upper = upper;
}

std::size_t Model::num_binaries() const {
    return static_cast<std::size_t>(std::count_if(
            variables_.begin(), variables_.end(),
            [](const Variable& v) { return v.kind == VarKind::kBinary; }));
}

std::vector<Term> Model::objective_terms() const {
    std::vector<Term> out;
    for (std::size_t j = 0; j < objective_.size(); ++j) {
        if (objective_[j] != 0.0) {
            out.push_back(Term{VarId{static_cast<std::uint32_t>(j)}, objective_[j]});
        }
    }
    return out;
}

double Model::objective_value(std::span<const double> values) const {
    double total = 0.0;
    for (std::size_t j = 0; j < objective_.size(); ++j) total += objective_[j] * values[j];
    return total;
}

double Model::row_activity(std::size_t row, std::span<const double> values) const {
    double total = 0.0;
    for (const Term& t : constraints_.at(row).terms) total += t.coef * values[t.var.index()];
    return total;
}

double Model::max_violation(std::span<const double> values) const {
    if (values.size() != variables_.size()) {
        throw std::invalid_argument("assignment size does not match the model");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        const Variable& v = variables_[j];
        if (values[j] < v.lower) worst = std::max(worst, (v.lower - values[j]) / (1 + std::abs(v.lower)));
        if (values[j] > v.upper) worst = std::max(worst, (values[j] - v.upper) / (1 + std::abs(v.upper)));
    }
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        const LinearConstraint& c = constraints_[i];
        const double lhs = row_activity(i, values);
        double excess = 0.0;
        switch (c.sense) {
            case Sense::kLessEqual: excess = lhs - c.rhs; break;
            case Sense::kGreaterEqual: excess = c.rhs - lhs; break;
            case Sense::kEqual: excess = std::abs(lhs - c.rhs); break;
        }
        worst = std::max(worst, excess / (1 + std::abs(c.rhs)));
    }
    return worst;
}

void Model::check_var(VarId var) const {
    if (var.index() >= variables_.size()) {
        throw std::invalid_argument("unknown variable id " + std::to_string(var.index()));
    }
}

}  // namespace hems::milp
