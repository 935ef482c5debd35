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

#include "hems/formulation/formulation.hpp"

#include <algorithm>
#include <string>

namespace hems {

using milp::Sense;
using milp::Term;
using milp::VarId;
using milp::VarKind;

std::string_view to_string(Family family) {
    switch (family) {
        case Family::kBalance: return "balance";
        case Family::kEss: return "ess";
        case Family::kEv: return "ev";
        case Family::kPv: return "pv";
        case Family::kExport: return "export";
        case Family::kExclusivity: return "exclusivity";
        case Family::kShifting: return "shifting";
    }
    return "?";
}

namespace {

std::string at(const char* stem, std::size_t t) { return std::string(stem) + "_t" + std::to_string(t); }

class Builder {
 public:
    Builder(const Scenario& s, const BuildOptions& o) : s_(s), opt_(o), T_(s.intervals()), dt_(s.dt()) {}

    Formulation build() {
        add_core_variables();
        if (s_.ess) out_.vars.ess = add_storage("ess", s_.ess->storage, [](std::size_t) { return true; });
        if (s_.ev) {
            const EVSpec ev = *s_.ev;
            out_.vars.ev = add_storage("ev", ev.storage, [ev](std::size_t t) { return ev.available(t); });
        }
        add_shift_variables();
        add_objective();
        add_balance();
        if (s_.ess) add_ess();
        if (s_.ev) add_ev();
        add_pv_and_export();
        add_exclusivity();
        add_assignments();
        return std::move(out_);
    }

 private:
    VarId var(VarKind kind, double lo, double hi, std::string name) {
        return out_.model.add_variable(kind, lo, hi, std::move(name));
    }

    void row(Family f, std::vector<Term> terms, Sense sense, double rhs, std::string tag) {
        if (opt_.omit.count(f)) return;
        out_.model.add_constraint(terms, sense, rhs, std::move(tag));
        out_.row_family.push_back(f);
    }

    void add_core_variables() {
        VarMap& v = out_.vars;
        for (std::size_t t = 0; t < T_; ++t) {
            v.grid_buy.push_back(var(VarKind::kContinuous, 0, milp::kInfinity, at("grid_buy", t)));
            v.grid_sell.push_back(var(VarKind::kContinuous, 0, milp::kInfinity, at("grid_sell", t)));
            v.pv_used.push_back(var(VarKind::kContinuous, 0, s_.pv_gen[t], at("pv_used", t)));
            v.pv_sold.push_back(var(VarKind::kContinuous, 0, s_.pv_gen[t], at("pv_sold", t)));
            v.u_grid.push_back(var(VarKind::kBinary, 0, 1, at("u_grid", t)));
        }
    }

    template <typename Available>
    StorageVars add_storage(const std::string& p, const StorageSpec& spec, Available available) {
        StorageVars sv;
        for (std::size_t t = 0; t < T_; ++t) {
            const bool on = available(t);
            // Outside availability every quantity is pinned to zero.
            auto bound = [&](double hi) { return on ? hi : 0.0; };
            sv.charge.push_back(var(VarKind::kContinuous, 0, bound(spec.charge_rate), at((p + "_charge").c_str(), t)));
            sv.discharge.push_back(
                    var(VarKind::kContinuous, 0, bound(spec.discharge_rate), at((p + "_discharge").c_str(), t)));
            sv.used.push_back(var(VarKind::kContinuous, 0, bound(milp::kInfinity), at((p + "_used").c_str(), t)));
            sv.sold.push_back(var(VarKind::kContinuous, 0, bound(milp::kInfinity), at((p + "_sold").c_str(), t)));
            sv.soe.push_back(var(VarKind::kContinuous, on ? spec.soe_min : 0.0, bound(spec.soe_max),
                                 at((p + "_soe").c_str(), t)));
            sv.mode.push_back(on ? std::optional(var(VarKind::kBinary, 0, 1, at(("u_" + p).c_str(), t)))
                                 : std::nullopt);
        }
        return sv;
    }

    void add_shift_variables() {
        for (std::size_t a = 0; a < s_.appliances.size(); ++a) {
            const ApplianceSpec& app = s_.appliances[a];
            const std::size_t adt = app.adt_intervals(dt_);
            if (adt == 0) continue;
            for (std::size_t src = 0; src < T_; ++src) {
                if (app.profile[src] <= 0.0) continue;
                const std::size_t last = std::min(src + adt, T_ - 1);
                for (std::size_t dst = src; dst <= last; ++dst) {
                    const VarId id = var(VarKind::kBinary, 0, 1,
                                         "u_" + app.name + "_" + std::to_string(src) + "_" + std::to_string(dst));
                    out_.vars.shifts.push_back(ShiftVar{a, src, dst, id});
                }
            }
        }
    }

    void add_objective() {
        const VarMap& v = out_.vars;
        milp::Model& m = out_.model;
        for (std::size_t t = 0; t < T_; ++t) {
            m.set_objective(v.grid_buy[t], s_.tariff.buy[t] * dt_);
            m.set_objective(v.grid_sell[t], -s_.tariff.sell[t] * dt_);
            m.set_objective(v.pv_sold[t], s_.penalties.pv * dt_);
            if (v.ess) m.set_objective(v.ess->sold[t], s_.penalties.ess * dt_);
            if (v.ev) m.set_objective(v.ev->sold[t], s_.penalties.ev * dt_);
        }
    }

    void add_balance() {
        const VarMap& v = out_.vars;
        for (std::size_t t = 0; t < T_; ++t) {
            std::vector<Term> terms{{v.grid_buy[t], 1.0}, {v.pv_used[t], 1.0}};
            if (v.ess) {
                terms.push_back({v.ess->used[t], 1.0});
                terms.push_back({v.ess->charge[t], -1.0});
            }
            if (v.ev) {
                terms.push_back({v.ev->used[t], 1.0});
                terms.push_back({v.ev->charge[t], -1.0});
            }
            double fixed_load = s_.non_deferrable[t];
            for (const ApplianceSpec& app : s_.appliances) {
                if (app.adt_intervals(dt_) == 0) fixed_load += app.profile[t];
            }
            for (const ShiftVar& sh : v.shifts) {
                if (sh.destination == t) terms.push_back({sh.id, -s_.appliances[sh.appliance].profile[sh.source]});
            }
            row(Family::kBalance, std::move(terms), Sense::kEqual, fixed_load, at("balance", t));
        }
    }

    // Delivery split, mode-gated rates and the energy recursion for the
    // intervals in [first, last]. The level before `first` is the initial energy.
    void add_storage_rows(Family f, const std::string& p, const StorageVars& sv, const StorageSpec& spec,
                          std::size_t first, std::size_t last) {
        for (std::size_t t = first; t <= last; ++t) {
            row(f, {{sv.used[t], 1.0}, {sv.sold[t], 1.0}, {sv.discharge[t], -spec.discharge_eff}}, Sense::kEqual, 0.0,
                at((p + "_split").c_str(), t));
            row(f, {{sv.charge[t], 1.0}, {*sv.mode[t], -spec.charge_rate}}, Sense::kLessEqual, 0.0,
                at((p + "_charge_cap").c_str(), t));
            row(f, {{sv.discharge[t], 1.0}, {*sv.mode[t], spec.discharge_rate}}, Sense::kLessEqual,
                spec.discharge_rate, at((p + "_discharge_cap").c_str(), t));
            std::vector<Term> terms{{sv.soe[t], 1.0},
                                    {sv.charge[t], -spec.charge_eff * dt_},
                                    {sv.discharge[t], dt_}};
            double rhs = spec.soe_init;
            if (t > first) {
                terms.push_back({sv.soe[t - 1], -1.0});
                rhs = 0.0;
            }
            row(f, std::move(terms), Sense::kEqual, rhs, at((p + "_soe").c_str(), t));
        }
    }

    void add_ess() {
        const EssSpec& ess = *s_.ess;
        const StorageVars& sv = *out_.vars.ess;
        add_storage_rows(Family::kEss, "ess", sv, ess.storage, 0, T_ - 1);
        if (ess.terminal_reserve) {
            row(Family::kEss, {{sv.soe[T_ - 1], 1.0}}, Sense::kGreaterEqual, ess.storage.soe_init, "ess_terminal");
        }
    }

    void add_ev() {
        const EVSpec& ev = *s_.ev;
        const StorageVars& sv = *out_.vars.ev;
        add_storage_rows(Family::kEv, "ev", sv, ev.storage, ev.arrival, ev.departure);
        if (ev.require_full_at_departure) {
            row(Family::kEv, {{sv.soe[ev.departure], 1.0}}, Sense::kEqual, ev.storage.soe_max, "ev_departure");
        }
    }

    void add_pv_and_export() {
        const VarMap& v = out_.vars;
        for (std::size_t t = 0; t < T_; ++t) {
            row(Family::kPv, {{v.pv_used[t], 1.0}, {v.pv_sold[t], 1.0}}, Sense::kEqual, s_.pv_gen[t], at("pv", t));
            std::vector<Term> terms{{v.grid_sell[t], 1.0}, {v.pv_sold[t], -1.0}};
            if (v.ess) terms.push_back({v.ess->sold[t], -1.0});
            if (v.ev) terms.push_back({v.ev->sold[t], -1.0});
            row(Family::kExport, std::move(terms), Sense::kEqual, 0.0, at("export", t));
        }
    }

    void add_exclusivity() {
        const VarMap& v = out_.vars;
        const BigM n = effective_big_m(s_);
        for (std::size_t t = 0; t < T_; ++t) {
            row(Family::kExclusivity, {{v.grid_buy[t], 1.0}, {v.u_grid[t], -n.import_limit}}, Sense::kLessEqual, 0.0,
                at("grid_buy_cap", t));
            row(Family::kExclusivity, {{v.grid_sell[t], 1.0}, {v.u_grid[t], n.export_limit}}, Sense::kLessEqual,
                n.export_limit, at("grid_sell_cap", t));
        }
    }

    void add_assignments() {
        const auto& shifts = out_.vars.shifts;
        for (std::size_t k = 0; k < shifts.size();) {
            std::vector<Term> terms;
            std::size_t j = k;
            for (; j < shifts.size() && shifts[j].appliance == shifts[k].appliance &&
                   shifts[j].source == shifts[k].source;
                 ++j) {
                terms.push_back({shifts[j].id, 1.0});
            }
            row(Family::kShifting, std::move(terms), Sense::kEqual, 1.0,
                "assign_" + s_.appliances[shifts[k].appliance].name + "_t" + std::to_string(shifts[k].source));
            k = j;
        }
    }

    const Scenario& s_;
    const BuildOptions& opt_;
    const std::size_t T_;
    const double dt_;
    Formulation out_;
};

}  // namespace

Formulation build_model(const Scenario& scenario, const BuildOptions& options) {
    validate(scenario);
    return Builder(scenario, options).build();
}

std::vector<Family> diagnose_infeasibility(const Scenario& scenario, const milp::MilpOptions& options) {
    auto feasible = [&](const BuildOptions& b, bool relaxed) {
        const Formulation f = build_model(scenario, b);
        const milp::Solution s = relaxed ? milp::solve_lp(f.model, options.lp) : milp::solve_milp(f.model, options);
        return s.status == milp::SolveStatus::kOptimal || s.status == milp::SolveStatus::kUnbounded;
    };
    if (feasible({}, false)) return {};
    // An infeasible relaxation is enough to test each family cheaply.
    const bool relaxed = !feasible({}, true);
    std::vector<Family> culprits;
    for (Family f : kAllFamilies) {
        if (feasible(BuildOptions{{f}}, relaxed)) culprits.push_back(f);
    }
    return culprits;
}

}  // namespace hems
