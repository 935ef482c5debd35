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

#include "hems/validation/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace hems {

bool AuditReport::pass() const {
    return std::all_of(families.begin(), families.end(), [](const FamilyResult& f) { return f.pass; });
}

const FamilyResult& AuditReport::family(Family f) const {
    for (const FamilyResult& r : families) {
        if (r.family == f) return r;
    }
    throw std::out_of_range("audit report has no family " + std::string(to_string(f)));
}

std::vector<Family> AuditReport::failing() const {
    std::vector<Family> out;
    for (const FamilyResult& r : families) {
        if (!r.pass) out.push_back(r.family);
    }
    return out;
}

namespace {

void check_shape(const Scenario& s, const Schedule& sc) {
    const std::size_t T = s.intervals();
    auto same = [&](const std::vector<double>& v, const char* name) {
        if (v.size() != T) {
            throw std::invalid_argument(std::string("schedule column ") + name + " has " + std::to_string(v.size()) +
                                        " intervals, scenario has " + std::to_string(T));
        }
    };
    same(sc.grid_buy, "grid_buy");
    same(sc.grid_sell, "grid_sell");
    same(sc.pv_used, "pv_used");
    same(sc.pv_sold, "pv_sold");
    for (const StorageTrace* tr : {&sc.ess, &sc.ev}) {
        same(tr->charge, "charge");
        same(tr->discharge, "discharge");
        same(tr->used, "used");
        same(tr->sold, "sold");
        same(tr->soe, "soe");
    }
    same(sc.served_load, "served_load");
    if (sc.destination.size() != s.appliances.size()) {
        throw std::invalid_argument("schedule lists " + std::to_string(sc.destination.size()) +
                                    " appliances, scenario has " + std::to_string(s.appliances.size()));
    }
    for (std::size_t a = 0; a < s.appliances.size(); ++a) {
        if (a < sc.appliance_names.size() && sc.appliance_names[a] != s.appliances[a].name) {
            throw std::invalid_argument("schedule appliance '" + sc.appliance_names[a] + "' does not match '" +
                                        s.appliances[a].name + "'");
        }
        if (sc.destination[a].size() != T) {
            throw std::invalid_argument("destination column for " + s.appliances[a].name + " has wrong length");
        }
    }
}

class Auditor {
 public:
    Auditor(const Scenario& s, const Schedule& sc, double tol) : s_(s), sc_(sc), tol_(tol), T_(s.intervals()) {
        for (Family f : kAllFamilies) report_.families.push_back(FamilyResult{f, true, 0, 0.0, {}, {}});
        report_.tolerance = tol;
    }

    AuditReport run() {
        balance();
        storage_family(Family::kEss, sc_.ess, s_.ess ? &s_.ess->storage : nullptr);
        storage_family(Family::kEv, sc_.ev, s_.ev ? &s_.ev->storage : nullptr);
        pv();
        export_rows();
        exclusivity();
        shifting();
        return std::move(report_);
    }

 private:
    // lhs - rhs must be zero / non-positive / non-negative.
    void eq(Family f, const char* rule, std::optional<std::size_t> t, double lhs, double rhs,
            const std::string& appliance = {}) {
        record(f, rule, t, std::abs(lhs - rhs), rhs, appliance);
    }
    void le(Family f, const char* rule, std::optional<std::size_t> t, double lhs, double rhs) {
        record(f, rule, t, std::max(0.0, lhs - rhs), rhs, {});
    }
    void ge(Family f, const char* rule, std::optional<std::size_t> t, double lhs, double rhs) {
        record(f, rule, t, std::max(0.0, rhs - lhs), rhs, {});
    }

    void record(Family f, const char* rule, std::optional<std::size_t> t, double amount, double rhs,
                const std::string& appliance) {
        FamilyResult& r = report_.families[static_cast<std::size_t>(f)];
        ++r.rows_checked;
        if (!(amount <= tol_ * (1.0 + std::abs(rhs)))) {
            r.pass = false;
            Violation v{rule, t, appliance, amount, rhs};
            if (!(amount <= r.worst_violation)) {
                r.worst_violation = amount;
                r.worst_location = location(v);
            }
            r.violations.push_back(std::move(v));
        }
    }

    static std::string location(const Violation& v) {
        std::string out = v.rule;
        if (!v.appliance.empty()) out += " " + v.appliance;
        if (v.interval) out += " t=" + std::to_string(*v.interval);
        return out;
    }

    void balance() {
        const std::vector<double> load = landed_load(s_, sc_);
        for (std::size_t t = 0; t < T_; ++t) {
            const double supply = sc_.grid_buy[t] + sc_.pv_used[t] + sc_.ev.used[t] + sc_.ess.used[t];
            eq(Family::kBalance, "power_balance", t, supply - sc_.ev.charge[t] - sc_.ess.charge[t], load[t]);
            ge(Family::kBalance, "grid_buy_nonnegative", t, sc_.grid_buy[t], 0.0);
        }
    }

    void storage_family(Family f, const StorageTrace& tr, const StorageSpec* spec) {
        const bool ev = f == Family::kEv;
        const double dt = s_.dt();
        std::size_t first = 0, last = T_ - 1;
        if (ev && s_.ev) {
            first = s_.ev->arrival;
            last = s_.ev->departure;
        }
        for (std::size_t t = 0; t < T_; ++t) {
            const bool on = spec && t >= first && t <= last;
            if (!on) {
                // Absent device, or a vehicle away from home: nothing may flow.
                for (double v : {tr.charge[t], tr.discharge[t], tr.used[t], tr.sold[t], tr.soe[t]}) {
                    eq(f, "unavailable_zero", t, v, 0.0);
                }
                continue;
            }
            for (double v : {tr.charge[t], tr.discharge[t], tr.used[t], tr.sold[t]}) ge(f, "nonnegative", t, v, 0.0);
            eq(f, "delivery_split", t, tr.used[t] + tr.sold[t], tr.discharge[t] * spec->discharge_eff);
            le(f, "charge_rate", t, tr.charge[t], spec->charge_rate);
            le(f, "discharge_rate", t, tr.discharge[t], spec->discharge_rate);
            const double before = t == first ? spec->soe_init : tr.soe[t - 1];
            eq(f, "energy_recursion", t, tr.soe[t],
               before + tr.charge[t] * spec->charge_eff * dt - tr.discharge[t] * dt);
            le(f, "energy_max", t, tr.soe[t], spec->soe_max);
            ge(f, "energy_min", t, tr.soe[t], spec->soe_min);
        }
        if (!spec) return;
        if (!ev && s_.ess->terminal_reserve) ge(f, "terminal_reserve", T_ - 1, tr.soe[T_ - 1], spec->soe_init);
        if (ev && s_.ev->require_full_at_departure) eq(f, "full_at_departure", last, tr.soe[last], spec->soe_max);
    }

    void pv() {
        for (std::size_t t = 0; t < T_; ++t) {
            eq(Family::kPv, "pv_split", t, sc_.pv_used[t] + sc_.pv_sold[t], s_.pv_gen[t]);
            ge(Family::kPv, "pv_used_nonnegative", t, sc_.pv_used[t], 0.0);
            ge(Family::kPv, "pv_sold_nonnegative", t, sc_.pv_sold[t], 0.0);
        }
    }

    void export_rows() {
        for (std::size_t t = 0; t < T_; ++t) {
            eq(Family::kExport, "export_total", t, sc_.grid_sell[t], sc_.pv_sold[t] + sc_.ess.sold[t] + sc_.ev.sold[t]);
            ge(Family::kExport, "grid_sell_nonnegative", t, sc_.grid_sell[t], 0.0);
        }
    }

    void exclusivity() {
        const BigM n = effective_big_m(s_);
        for (std::size_t t = 0; t < T_; ++t) {
            le(Family::kExclusivity, "buy_xor_sell", t, std::min(sc_.grid_buy[t], sc_.grid_sell[t]), 0.0);
            le(Family::kExclusivity, "import_limit", t, sc_.grid_buy[t], n.import_limit);
            le(Family::kExclusivity, "export_limit", t, sc_.grid_sell[t], n.export_limit);
            le(Family::kExclusivity, "ess_charge_xor_discharge", t, std::min(sc_.ess.charge[t], sc_.ess.discharge[t]),
               0.0);
            le(Family::kExclusivity, "ev_charge_xor_discharge", t, std::min(sc_.ev.charge[t], sc_.ev.discharge[t]),
               0.0);
        }
    }

    void shifting() {
        constexpr Family f = Family::kShifting;
        const double dt = s_.dt();
        std::vector<double> landed(s_.non_deferrable.begin(), s_.non_deferrable.end());
        for (std::size_t a = 0; a < s_.appliances.size(); ++a) {
            const ApplianceSpec& app = s_.appliances[a];
            const std::size_t adt = app.adt_intervals(dt);
            for (std::size_t src = 0; src < T_; ++src) {
                const int dst = sc_.destination[a][src];
                const double load = app.profile[src];
                if (load <= 0.0) {
                    eq(f, "no_block_no_destination", src, dst == kNoLoad ? 0.0 : 1.0, 0.0, app.name);
                    continue;
                }
                const bool placed = dst >= 0 && static_cast<std::size_t>(dst) < T_;
                eq(f, "one_destination", src, placed ? 1.0 : 0.0, 1.0, app.name);
                if (!placed) continue;
                const auto d = static_cast<std::size_t>(dst);
                // Distances in intervals.
                eq(f, "no_early_shift", src, d < src ? static_cast<double>(src - d) : 0.0, 0.0, app.name);
                eq(f, "within_delay", src, d > src + adt ? static_cast<double>(d - src - adt) : 0.0, 0.0, app.name);
                // Load moved away from src lies in [0, PD].
                const double moved = d == src ? 0.0 : load;
                le(f, "moved_at_most_scheduled", src, moved, load);
                ge(f, "moved_nonnegative", src, moved, 0.0);
                landed[d] += load;
            }
        }
        for (std::size_t t = 0; t < T_; ++t) eq(f, "served_load", t, sc_.served_load[t], landed[t]);
    }

    const Scenario& s_;
    const Schedule& sc_;
    const double tol_;
    const std::size_t T_;
    AuditReport report_;
};

}  // namespace

AuditReport audit(const Scenario& scenario, const Schedule& schedule, double tolerance) {
    check_shape(scenario, schedule);
    return Auditor(scenario, schedule, tolerance).run();
}

std::string to_json(const AuditReport& report) {
    nlohmann::ordered_json doc;
    doc["pass"] = report.pass();
    doc["tolerance"] = report.tolerance;
    doc["families"] = nlohmann::ordered_json::array();
    for (const FamilyResult& r : report.families) {
        nlohmann::ordered_json fam;
        fam["family"] = to_string(r.family);
        fam["pass"] = r.pass;
        fam["rows_checked"] = r.rows_checked;
        fam["worst_violation"] = r.worst_violation;
        fam["worst_location"] = r.worst_location;
        fam["violations"] = nlohmann::ordered_json::array();
        for (const Violation& v : r.violations) {
            nlohmann::ordered_json j;
            j["rule"] = v.rule;
            j["interval"] = v.interval ? nlohmann::ordered_json(*v.interval) : nlohmann::ordered_json();
            if (!v.appliance.empty()) j["appliance"] = v.appliance;
            j["violation"] = v.amount;
            j["rhs"] = v.rhs;
            fam["violations"].push_back(std::move(j));
        }
        doc["families"].push_back(std::move(fam));
    }
    return doc.dump(2) + "\n";
}

}  // namespace hems
