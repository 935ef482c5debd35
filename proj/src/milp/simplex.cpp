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

// Bounded-variable primal simplex on a dense tableau.
//
// Every row i gets a logical column s_i with coefficient +1, turning the model
// into  A x + s = b  with  s_i in [0, inf) for <=, (-inf, 0] for >= and [0, 0]
// for = rows. Because the logical columns of A are the identity, the logical
// block of the tableau is B^-1 at every iteration; it is used to recompute the
// basic values at the end of each phase and to read the row duals.
//
// Rows that the starting basis cannot satisfy receive an artificial column and
// phase 1 minimizes the sum of artificials. Variables with lower == upper never
// get a column; their contribution is folded into the right-hand side.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "hems/milp/solver.hpp"

namespace hems::milp {

std::string_view to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::kOptimal: return "optimal";
        case SolveStatus::kInfeasible: return "infeasible";
        case SolveStatus::kUnbounded: return "unbounded";
        case SolveStatus::kIterationLimit: return "iteration-limit";
    }
    return "unknown";
}

namespace {

enum class ColKind : std::uint8_t { kStructural, kLogical, kArtificial };
enum class ColState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

constexpr double kDropTol = 1e-13;
constexpr double kDegenerateStep = 1e-12;

class BoundedSimplex {
 public:
    BoundedSimplex(const Model& model, std::span<const double> lower,
                   std::span<const double> upper, const LpOptions& options)
            : model_(model), lower_(lower), upper_(upper), opt_(options) {
        setup();
    }

    Solution run();

 private:
    enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

    void setup();
    void compute_reduced_costs();
    void refresh_basic_values();
    PhaseResult iterate(bool phase_one);
    std::size_t price(bool bland) const;
    void pivot(std::size_t row, std::size_t col);

    double& tab(std::size_t i, std::size_t j) { return tab_[i * ncols_ + j]; }
    double tab(std::size_t i, std::size_t j) const { return tab_[i * ncols_ + j]; }

    double phase_one_infeasibility() const;
    Solution extract(SolveStatus status) const;

    const Model& model_;
    std::span<const double> lower_;
    std::span<const double> upper_;
    LpOptions opt_;

    std::size_t m_ = 0;
    std::size_t ncols_ = 0;
    std::size_t num_struct_ = 0;

    std::vector<double> row_scale_;
    std::vector<double> rhs_;  // scaled, with fixed variables folded in

    // Per column.
    std::vector<ColKind> kind_;
    std::vector<std::size_t> origin_;  // model variable, row, or row (artificial)
    std::vector<double> lo_, up_, cost_, x_, d_;
    std::vector<ColState> state_;
    std::vector<double> art_sign_;

    std::vector<std::size_t> struct_col_;  // model variable -> column, or npos
    std::vector<std::size_t> basis_;       // row -> column
    std::vector<double> tab_;

    std::vector<double> phase_cost_;
    std::size_t iterations_ = 0;
    std::size_t stall_ = 0;
    std::vector<std::size_t> nz_;  // scratch for pivot row nonzeros

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

void BoundedSimplex::setup() {
    const auto& vars = model_.variables();
    const auto& rows = model_.constraints();
    const std::size_t n = vars.size();
    m_ = rows.size();

    struct_col_.assign(n, npos);
    for (std::size_t j = 0; j < n; ++j) {
        if (lower_[j] > upper_[j]) throw std::invalid_argument("solve_lp: lower bound exceeds upper bound");
        if (lower_[j] == upper_[j]) continue;
        struct_col_[j] = kind_.size();
        kind_.push_back(ColKind::kStructural);
        origin_.push_back(j);
        lo_.push_back(lower_[j]);
        up_.push_back(upper_[j]);
        cost_.push_back(model_.objective()[j]);
    }
    num_struct_ = kind_.size();

    row_scale_.assign(m_, 1.0);
    rhs_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
        double biggest = 0.0;
        for (const Term& t : rows[i].terms) biggest = std::max(biggest, std::abs(t.coef));
        if (opt_.scale_rows && biggest > 0.0) row_scale_[i] = 1.0 / biggest;
        double b = rows[i].rhs;
        for (const Term& t : rows[i].terms) {
            if (struct_col_[t.var.index()] == npos) b -= t.coef * lower_[t.var.index()];
        }
        rhs_[i] = b * row_scale_[i];
    }

    for (std::size_t i = 0; i < m_; ++i) {
        kind_.push_back(ColKind::kLogical);
        origin_.push_back(i);
        switch (rows[i].sense) {
            case Sense::kLessEqual: lo_.push_back(0.0); up_.push_back(kInfinity); break;
            case Sense::kGreaterEqual: lo_.push_back(-kInfinity); up_.push_back(0.0); break;
            case Sense::kEqual: lo_.push_back(0.0); up_.push_back(0.0); break;
        }
        cost_.push_back(0.0);
    }

    // Starting point for the structurals.
    x_.assign(kind_.size(), 0.0);
    state_.assign(kind_.size(), ColState::kAtLower);
    for (std::size_t c = 0; c < num_struct_; ++c) {
        if (std::isfinite(lo_[c])) {
            x_[c] = lo_[c];
            state_[c] = ColState::kAtLower;
        } else if (std::isfinite(up_[c])) {
            x_[c] = up_[c];
            state_[c] = ColState::kAtUpper;
        } else {
            x_[c] = 0.0;
            state_[c] = ColState::kFree;
        }
    }

    // Decide per row whether its logical can start basic or needs an artificial.
    std::vector<double> residual(rhs_);
    for (std::size_t i = 0; i < m_; ++i) {
        for (const Term& t : rows[i].terms) {
            const std::size_t c = struct_col_[t.var.index()];
            if (c != npos) residual[i] -= t.coef * row_scale_[i] * x_[c];
        }
    }
    basis_.assign(m_, npos);
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t s = num_struct_ + i;
        const double r = residual[i];
        if (r >= lo_[s] - opt_.feasibility_tol && r <= up_[s] + opt_.feasibility_tol) {
            basis_[i] = s;
            state_[s] = ColState::kBasic;
            x_[s] = r;
        } else {
            const double at = std::clamp(r, lo_[s], up_[s]);
            x_[s] = at;
            state_[s] = at == lo_[s] ? ColState::kAtLower : ColState::kAtUpper;
            needs_artificial.push_back(i);
        }
    }
    art_sign_.assign(m_, 0.0);
    for (std::size_t i : needs_artificial) {
        const std::size_t s = num_struct_ + i;
        const double gap = residual[i] - x_[s];
        const std::size_t a = kind_.size();
        kind_.push_back(ColKind::kArtificial);
        origin_.push_back(i);
        lo_.push_back(0.0);
        up_.push_back(kInfinity);
        cost_.push_back(0.0);
        x_.push_back(std::abs(gap));
        state_.push_back(ColState::kBasic);
        art_sign_[i] = gap >= 0.0 ? 1.0 : -1.0;
        basis_[i] = a;
    }
    ncols_ = kind_.size();

    tab_.assign(m_ * ncols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
        const double sigma = art_sign_[i] == 0.0 ? 1.0 : art_sign_[i];
        for (const Term& t : rows[i].terms) {
            const std::size_t c = struct_col_[t.var.index()];
            if (c != npos) tab(i, c) = sigma * t.coef * row_scale_[i];
        }
        tab(i, num_struct_ + i) = sigma;
        if (art_sign_[i] != 0.0) tab(i, basis_[i]) = 1.0;
    }
    d_.assign(ncols_, 0.0);
    nz_.reserve(ncols_);
}

void BoundedSimplex::compute_reduced_costs() {
    d_ = phase_cost_;
    for (std::size_t i = 0; i < m_; ++i) {
        const double cb = phase_cost_[basis_[i]];
        if (cb == 0.0) continue;
        const double* row = &tab_[i * ncols_];
        for (std::size_t j = 0; j < ncols_; ++j) d_[j] -= cb * row[j];
    }
    for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
}

// x_B = B^-1 (b - N x_N), with B^-1 read from the logical block.
void BoundedSimplex::refresh_basic_values() {
    if (m_ == 0) return;
    std::vector<double> r(rhs_);
    const auto& rows = model_.constraints();
    for (std::size_t i = 0; i < m_; ++i) {
        for (const Term& t : rows[i].terms) {
            const std::size_t c = struct_col_[t.var.index()];
            if (c != npos && state_[c] != ColState::kBasic) {
                r[i] -= t.coef * row_scale_[i] * x_[c];
            }
        }
    }
    for (std::size_t c = num_struct_; c < ncols_; ++c) {
        if (state_[c] == ColState::kBasic || x_[c] == 0.0) continue;
        const std::size_t i = origin_[c];
        r[i] -= (kind_[c] == ColKind::kLogical ? 1.0 : art_sign_[i]) * x_[c];
    }
    for (std::size_t i = 0; i < m_; ++i) {
        double v = 0.0;
        const double* row = &tab_[i * ncols_ + num_struct_];
        for (std::size_t k = 0; k < m_; ++k) v += row[k] * r[k];
        x_[basis_[i]] = v;
    }
}

std::size_t BoundedSimplex::price(bool bland) const {
    std::size_t best = npos;
    double best_score = 0.0;
    for (std::size_t j = 0; j < ncols_; ++j) {
        if (lo_[j] == up_[j]) continue;
        const double dj = d_[j];
        double score = 0.0;
        switch (state_[j]) {
            case ColState::kBasic: continue;
            case ColState::kAtLower: score = -dj; break;
            case ColState::kAtUpper: score = dj; break;
            case ColState::kFree: score = std::abs(dj); break;
        }
        if (score <= opt_.optimality_tol) continue;
        if (bland) return j;
        if (score > best_score) {
            best_score = score;
            best = j;
        }
    }
    return best;
}

void BoundedSimplex::pivot(std::size_t r, std::size_t q) {
    double* prow = &tab_[r * ncols_];
    const double inv = 1.0 / prow[q];
    nz_.clear();
    for (std::size_t j = 0; j < ncols_; ++j) {
        if (prow[j] != 0.0) {
            prow[j] *= inv;
            nz_.push_back(j);
        }
    }
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
        if (i == r) continue;
        double* row = &tab_[i * ncols_];
        const double f = row[q];
        if (f == 0.0) continue;
        for (std::size_t j : nz_) {
            double v = row[j] - f * prow[j];
            row[j] = std::abs(v) < kDropTol ? 0.0 : v;
        }
        row[q] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
        for (std::size_t j : nz_) d_[j] -= f * prow[j];
    }
    d_[q] = 0.0;
    basis_[r] = q;
}

double BoundedSimplex::phase_one_infeasibility() const {
    double total = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
        if (kind_[basis_[i]] == ColKind::kArtificial) total += std::max(0.0, x_[basis_[i]]);
    }
    return total;
}

BoundedSimplex::PhaseResult BoundedSimplex::iterate(bool phase_one) {
    stall_ = 0;
    while (true) {
        if (phase_one && phase_one_infeasibility() <= opt_.feasibility_tol) return PhaseResult::kOptimal;
        const bool bland = stall_ >= opt_.degenerate_stall_limit;
        const std::size_t q = price(bland);
        if (q == npos) return PhaseResult::kOptimal;
        if (iterations_ >= opt_.iteration_limit) return PhaseResult::kIterationLimit;
        ++iterations_;

        double dir = 1.0;
        if (state_[q] == ColState::kAtUpper || (state_[q] == ColState::kFree && d_[q] > 0.0)) dir = -1.0;

        // Ratio test. Harris two-pass in the default mode; exact minimum with
        // lowest-column tie-break under Bland's rule.
        const double tol = opt_.feasibility_tol;
        std::size_t leave = npos;
        double theta = kInfinity;
        if (!bland) {
            double relaxed = kInfinity;
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = dir * tab(i, q);
                const std::size_t b = basis_[i];
                if (a > opt_.pivot_tol && std::isfinite(lo_[b])) {
                    relaxed = std::min(relaxed, (x_[b] - lo_[b] + tol) / a);
                } else if (a < -opt_.pivot_tol && std::isfinite(up_[b])) {
                    relaxed = std::min(relaxed, (up_[b] - x_[b] + tol) / -a);
                }
            }
            double best_alpha = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = dir * tab(i, q);
                const std::size_t b = basis_[i];
                double ratio = kInfinity;
                if (a > opt_.pivot_tol && std::isfinite(lo_[b])) {
                    ratio = (x_[b] - lo_[b]) / a;
                } else if (a < -opt_.pivot_tol && std::isfinite(up_[b])) {
                    ratio = (up_[b] - x_[b]) / -a;
                } else {
                    continue;
                }
                if (ratio <= relaxed && std::abs(a) > best_alpha) {
                    best_alpha = std::abs(a);
                    leave = i;
                    theta = std::max(0.0, ratio);
                }
            }
        } else {
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = dir * tab(i, q);
                const std::size_t b = basis_[i];
                double ratio = kInfinity;
                if (a > opt_.pivot_tol && std::isfinite(lo_[b])) {
                    ratio = std::max(0.0, (x_[b] - lo_[b]) / a);
                } else if (a < -opt_.pivot_tol && std::isfinite(up_[b])) {
                    ratio = std::max(0.0, (up_[b] - x_[b]) / -a);
                } else {
                    continue;
                }
                if (ratio < theta - kDegenerateStep ||
                    (ratio <= theta + kDegenerateStep && leave != npos && b < basis_[leave])) {
                    theta = std::min(theta, ratio);
                    leave = i;
                }
            }
        }

        const double range = up_[q] - lo_[q];
        const bool flip = std::isfinite(range) && range <= theta;
        if (flip) theta = range;
        if (!std::isfinite(theta)) {
            // Only phase 2 can be unbounded; phase 1 is bounded below by zero.
            return PhaseResult::kUnbounded;
        }

        stall_ = theta <= kDegenerateStep ? stall_ + 1 : 0;

        if (theta > 0.0) {
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = tab(i, q);
                if (a != 0.0) x_[basis_[i]] -= dir * theta * a;
            }
        }
        if (flip) {
            x_[q] = dir > 0 ? up_[q] : lo_[q];
            state_[q] = dir > 0 ? ColState::kAtUpper : ColState::kAtLower;
            continue;
        }

        const std::size_t out = basis_[leave];
        const bool to_lower = dir * tab(leave, q) > 0.0;
        const double entering_value = x_[q] + dir * theta;
        x_[out] = to_lower ? lo_[out] : up_[out];
        state_[out] = to_lower ? ColState::kAtLower : ColState::kAtUpper;
        if (kind_[out] == ColKind::kArtificial) {
            lo_[out] = up_[out] = 0.0;
            x_[out] = 0.0;
            state_[out] = ColState::kAtLower;
        }
        pivot(leave, q);
        x_[q] = entering_value;
        state_[q] = ColState::kBasic;
    }
}

Solution BoundedSimplex::run() {
    phase_cost_.assign(ncols_, 0.0);
    bool has_artificial = false;
    for (std::size_t c = 0; c < ncols_; ++c) {
        if (kind_[c] == ColKind::kArtificial) {
            phase_cost_[c] = 1.0;
            has_artificial = true;
        }
    }
    if (has_artificial) {
        compute_reduced_costs();
        const PhaseResult r = iterate(true);
        if (r == PhaseResult::kIterationLimit) return extract(SolveStatus::kIterationLimit);
        refresh_basic_values();
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t b = basis_[i];
            if (kind_[b] == ColKind::kArtificial && x_[b] > opt_.feasibility_tol) {
                return extract(SolveStatus::kInfeasible);
            }
        }
        for (std::size_t c = 0; c < ncols_; ++c) {
            if (kind_[c] != ColKind::kArtificial) continue;
            lo_[c] = up_[c] = 0.0;
            if (state_[c] != ColState::kBasic) x_[c] = 0.0;
        }
    }

    std::copy(cost_.begin(), cost_.end(), phase_cost_.begin());
    for (std::size_t c = num_struct_; c < ncols_; ++c) phase_cost_[c] = 0.0;
    compute_reduced_costs();
    const PhaseResult r = iterate(false);
    if (r == PhaseResult::kIterationLimit) return extract(SolveStatus::kIterationLimit);
    if (r == PhaseResult::kUnbounded) return extract(SolveStatus::kUnbounded);
    refresh_basic_values();
    compute_reduced_costs();
    return extract(SolveStatus::kOptimal);
}

Solution BoundedSimplex::extract(SolveStatus status) const {
    Solution sol;
    sol.status = status;
    sol.lp_iterations = iterations_;
    const std::size_t n = model_.num_variables();
    sol.values.assign(n, 0.0);
    sol.basis.assign(n, BasisStatus::kFixed);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t c = struct_col_[j];
        if (c == npos) {
            sol.values[j] = lower_[j];
            continue;
        }
        sol.values[j] = x_[c];
        switch (state_[c]) {
            case ColState::kBasic: sol.basis[j] = BasisStatus::kBasic; break;
            case ColState::kAtLower: sol.basis[j] = BasisStatus::kAtLower; break;
            case ColState::kAtUpper: sol.basis[j] = BasisStatus::kAtUpper; break;
            case ColState::kFree: sol.basis[j] = BasisStatus::kFree; break;
        }
    }
    sol.objective = model_.objective_value(sol.values);
    if (status != SolveStatus::kOptimal) return sol;

    sol.row_duals.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) sol.row_duals[i] = -d_[num_struct_ + i] * row_scale_[i];
    sol.reduced_costs.assign(model_.objective().begin(), model_.objective().end());
    const auto& rows = model_.constraints();
    for (std::size_t i = 0; i < m_; ++i) {
        for (const Term& t : rows[i].terms) sol.reduced_costs[t.var.index()] -= sol.row_duals[i] * t.coef;
    }
    return sol;
}

}  // namespace

Solution solve_lp(const Model& model, std::span<const double> lower, std::span<const double> upper,
                  const LpOptions& options) {
    if (lower.size() != model.num_variables() || upper.size() != model.num_variables()) {
        throw std::invalid_argument("solve_lp: bound vectors do not match the model");
    }
    BoundedSimplex simplex(model, lower, upper, options);
    return simplex.run();
}

Solution solve_lp(const Model& model, const LpOptions& options) {
    std::vector<double> lower, upper;
    lower.reserve(model.num_variables());
    upper.reserve(model.num_variables());
    for (const Variable& v : model.variables()) {
        lower.push_back(v.lower);
        upper.push_back(v.upper);
    }
    return solve_lp(model, lower, upper, options);
}

}  // namespace hems::milp
