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

#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>

#include "hems/milp/solver.hpp"

namespace hems::milp {

namespace {

struct Node {
    // -1 free, 0 or 1 fixed, indexed like Search::binaries_.
    std::vector<std::int8_t> fixing;
    double bound = -kInfinity;
    std::size_t depth = 0;
    std::uint64_t seq = 0;
};

// Best bound first; among equal bounds the deeper node, then the older one.
struct NodeAfter {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.seq > b.seq;
    }
};

class Search {
 public:
    Search(const Model& model, const MilpOptions& options) : model_(model), opt_(options) {
        for (const Variable& v : model.variables()) {
            lower_.push_back(v.lower);
            upper_.push_back(v.upper);
        }
        for (std::size_t j = 0; j < model.num_variables(); ++j) {
            if (model.variables()[j].kind == VarKind::kBinary) binaries_.push_back(j);
        }
    }

    Solution run();

 private:
    Solution solve_node(const Node& node);
    std::optional<std::size_t> branching_index(const std::vector<double>& values) const;

    const Model& model_;
    MilpOptions opt_;
    std::vector<double> lower_, upper_;
    std::vector<std::size_t> binaries_;
    std::size_t lp_iterations_ = 0;
};

Solution Search::solve_node(const Node& node) {
    std::vector<double> lo(lower_), up(upper_);
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
        if (node.fixing[k] < 0) continue;
        lo[binaries_[k]] = up[binaries_[k]] = node.fixing[k];
    }
    Solution s = solve_lp(model_, lo, up, opt_.lp);
    lp_iterations_ += s.lp_iterations;
    return s;
}

// Position in binaries_ of the most fractional binary; ties go to the lowest id.
std::optional<std::size_t> Search::branching_index(const std::vector<double>& values) const {
    std::optional<std::size_t> pick;
    double best = opt_.integrality_tol;
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
        const double v = values[binaries_[k]];
        const double frac = std::abs(v - std::round(v));
        if (frac > best) {
            best = frac;
            pick = k;
        }
    }
    return pick;
}

Solution Search::run() {
    std::priority_queue<Node, std::vector<Node>, NodeAfter> open;
    std::uint64_t seq = 0;
    open.push(Node{std::vector<std::int8_t>(binaries_.size(), -1), -kInfinity, 0, seq++});

    std::optional<std::vector<std::int8_t>> incumbent;
    double incumbent_obj = kInfinity;
    std::size_t nodes = 0;
    bool hit_limit = false;
    bool lp_limit = false;

    while (!open.empty()) {
        if (open.top().bound >= incumbent_obj - opt_.gap_tol) break;
        if (nodes >= opt_.node_limit) {
            hit_limit = true;
            break;
        }
        Node node = open.top();
        open.pop();
        ++nodes;

        Solution lp = solve_node(node);
        if (lp.status == SolveStatus::kInfeasible) continue;
        if (lp.status == SolveStatus::kIterationLimit) {
            lp_limit = true;
            continue;
        }
        if (lp.status == SolveStatus::kUnbounded) {
            Solution out;
            out.status = SolveStatus::kUnbounded;
            out.values = std::move(lp.values);
            out.objective = lp.objective;
            out.nodes_explored = nodes;
            out.lp_iterations = lp_iterations_;
            return out;
        }
        if (lp.objective >= incumbent_obj - opt_.gap_tol) continue;

        const auto k = branching_index(lp.values);
        if (!k) {
            std::vector<std::int8_t> rounded(binaries_.size());
            for (std::size_t b = 0; b < binaries_.size(); ++b) {
                rounded[b] = static_cast<std::int8_t>(std::lround(lp.values[binaries_[b]]));
            }
            incumbent = std::move(rounded);
            incumbent_obj = lp.objective;
            continue;
        }

        // The child on the side the LP value leans toward gets the lower
        // sequence number, so it is explored first among equal bounds.
        const double v = lp.values[binaries_[*k]];
        const std::int8_t first = v >= 0.5 ? 1 : 0;
        for (std::int8_t side : {first, static_cast<std::int8_t>(1 - first)}) {
            Node child{node.fixing, lp.objective, node.depth + 1, seq++};
            child.fixing[*k] = side;
            open.push(std::move(child));
        }
    }

    Solution out;
    out.nodes_explored = nodes;
    if (!incumbent) {
        out.status = (hit_limit || lp_limit) ? SolveStatus::kIterationLimit : SolveStatus::kInfeasible;
        out.lp_iterations = lp_iterations_;
        return out;
    }

    // Polish: re-solve with every binary fixed to its exact 0/1 value.
    Node fixed{*incumbent, incumbent_obj, 0, 0};
    Solution polished = solve_node(fixed);
    out.lp_iterations = lp_iterations_;
    if (polished.status != SolveStatus::kOptimal) {
        out.status = SolveStatus::kIterationLimit;
        return out;
    }
    out.values = std::move(polished.values);
    out.objective = polished.objective;
    out.status = (hit_limit || lp_limit) ? SolveStatus::kIterationLimit : SolveStatus::kOptimal;
    return out;
}

}  // namespace

Solution solve_milp(const Model& model, const MilpOptions& options) {
    Search search(model, options);
    return search.run();
}

}  // namespace hems::milp
