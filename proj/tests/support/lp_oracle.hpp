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

// Test-only oracles that never touch the simplex code path.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "hems/milp/model.hpp"

namespace hems::testing {

/// Minimum objective over every basic feasible solution of a bounded LP.
///
/// A vertex has n linearly independent active constraints: a subset R of the
/// rows plus bounds on the variables outside a set F with |F| = |R|. Equality
/// rows outside R are enforced by the feasibility check, which covers models
/// whose equality rows are linearly dependent. For every (R, F) the |R| x |R|
/// system is factored once and solved for each of the 2^(n-|R|) bound
/// patterns. All bounds must be finite. Returns nullopt when no feasible vertex exists (then the polytope is
/// empty).
inline std::optional<double> vertex_enumeration_optimum(const milp::Model& model) {
    using milp::Sense;
    const std::size_t n = model.num_variables();
    const std::size_t m = model.num_constraints();
    if (n > 16 || m > 16) throw std::invalid_argument("vertex enumeration: model too large");
    for (const auto& v : model.variables()) {
        if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
            throw std::invalid_argument("vertex enumeration needs finite bounds");
        }
    }
    std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = model.constraints()[i];
        for (const auto& t : c.terms) a[i][t.var.index()] = t.coef;
        b[i] = c.rhs;
    }
    const auto& cost = model.objective();
    constexpr double kTol = 1e-9;

    auto feasible = [&](const std::vector<double>& x) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto& v = model.variables()[j];
            if (x[j] < v.lower - kTol * (1 + std::abs(v.lower))) return false;
            if (x[j] > v.upper + kTol * (1 + std::abs(v.upper))) return false;
        }
        for (std::size_t i = 0; i < m; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += a[i][j] * x[j];
            const double tol = kTol * (1 + std::abs(b[i]));
            switch (model.constraints()[i].sense) {
                case Sense::kLessEqual: if (lhs > b[i] + tol) return false; break;
                case Sense::kGreaterEqual: if (lhs < b[i] - tol) return false; break;
                case Sense::kEqual: if (std::abs(lhs - b[i]) > tol) return false; break;
            }
        }
        return true;
    };

    std::optional<double> best;
    std::vector<double> x(n);
    for (std::uint32_t rows = 0; rows < (1u << m); ++rows) {
        const std::size_t k = static_cast<std::size_t>(std::popcount(rows));
        if (k > n) continue;
        std::vector<std::size_t> r_idx;
        for (std::size_t i = 0; i < m; ++i) if (rows >> i & 1u) r_idx.push_back(i);

        for (std::uint32_t free = 0; free < (1u << n); ++free) {
            if (static_cast<std::size_t>(std::popcount(free)) != k) continue;
            std::vector<std::size_t> f_idx, fixed_idx;
            for (std::size_t j = 0; j < n; ++j) (free >> j & 1u ? f_idx : fixed_idx).push_back(j);

            // LU with partial pivoting of A[R][F].
            std::vector<std::vector<double>> lu(k, std::vector<double>(k));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) lu[r][c] = a[r_idx[r]][f_idx[c]];
            std::vector<std::size_t> perm(k);
            for (std::size_t r = 0; r < k; ++r) perm[r] = r;
            bool singular = false;
            for (std::size_t c = 0; c < k && !singular; ++c) {
                std::size_t p = c;
                for (std::size_t r = c + 1; r < k; ++r)
                    if (std::abs(lu[r][c]) > std::abs(lu[p][c])) p = r;
                if (std::abs(lu[p][c]) < 1e-10) {
                    singular = true;
                    break;
                }
                std::swap(lu[p], lu[c]);
                std::swap(perm[p], perm[c]);
                for (std::size_t r = c + 1; r < k; ++r) {
                    lu[r][c] /= lu[c][c];
                    for (std::size_t cc = c + 1; cc < k; ++cc) lu[r][cc] -= lu[r][c] * lu[c][cc];
                }
            }
            if (singular) continue;

            const std::size_t nfixed = fixed_idx.size();
            for (std::uint32_t pattern = 0; pattern < (1u << nfixed); ++pattern) {
                for (std::size_t q = 0; q < nfixed; ++q) {
                    const auto& v = model.variables()[fixed_idx[q]];
                    x[fixed_idx[q]] = (pattern >> q & 1u) ? v.upper : v.lower;
                }
                std::vector<double> rhs(k);
                for (std::size_t r = 0; r < k; ++r) {
                    double s = b[r_idx[perm[r]]];
                    for (std::size_t j : fixed_idx) s -= a[r_idx[perm[r]]][j] * x[j];
                    rhs[r] = s;
                }
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = 0; c < r; ++c) rhs[r] -= lu[r][c] * rhs[c];
                for (std::size_t r = k; r-- > 0;) {
                    for (std::size_t c = r + 1; c < k; ++c) rhs[r] -= lu[r][c] * rhs[c];
                    rhs[r] /= lu[r][r];
                }
                for (std::size_t c = 0; c < k; ++c) x[f_idx[c]] = rhs[c];
                if (!feasible(x)) continue;
                double obj = 0.0;
                for (std::size_t j = 0; j < n; ++j) obj += cost[j] * x[j];
                if (!best || obj < *best) best = obj;
            }
        }
    }
    return best;
}

/// Random bounded LP with small integer data. Roughly 80% are built around a
/// known feasible point; the rest have free right-hand sides and may be
/// infeasible. Integer data makes degenerate vertices common.
inline milp::Model random_lp(std::mt19937_64& rng, std::size_t max_vars = 10, std::size_t max_rows = 8) {
    std::uniform_int_distribution<int> nvar(1, static_cast<int>(max_vars));
    std::uniform_int_distribution<int> nrow(1, static_cast<int>(max_rows));
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> low(-4, 1);
    std::uniform_int_distribution<int> width(0, 6);
    std::uniform_int_distribution<int> sense(0, 5);
    std::uniform_int_distribution<int> slack(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    milp::Model model;
    const auto n = static_cast<std::size_t>(nvar(rng));
    const auto m = static_cast<std::size_t>(nrow(rng));
    std::vector<double> point;
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = low(rng);
        const double hi = lo + width(rng);
        auto id = model.add_variable(milp::VarKind::kContinuous, lo, hi, "x" + std::to_string(j));
        model.set_objective(id, coef(rng));
        point.push_back(lo + (hi - lo) * std::floor(unit(rng) * 3.0) / 2.0);
    }
    const bool anchored = unit(rng) < 0.8;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<milp::Term> terms;
        double activity = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (unit(rng) < 0.35) continue;
            const double c = coef(rng);
            terms.push_back({milp::VarId{static_cast<std::uint32_t>(j)}, c});
            activity += c * point[j];
        }
        const int s = sense(rng);
        const milp::Sense sn = s < 3 ? milp::Sense::kLessEqual
                             : s < 5 ? milp::Sense::kGreaterEqual
                                     : milp::Sense::kEqual;
        double rhs = anchored ? activity : coef(rng) * 2.0;
        if (anchored && sn == milp::Sense::kLessEqual) rhs += slack(rng);
        if (anchored && sn == milp::Sense::kGreaterEqual) rhs -= slack(rng);
        model.add_constraint(terms, sn, rhs, "r" + std::to_string(i));
    }
    return model;
}

}  // namespace hems::testing
