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

#include "hems/scenario/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hems {

namespace {

// Guards floor(1.5 / 0.5) and similar ratios against representation error.
constexpr double kRatioSlack = 1e-9;

void check_series(const std::vector<double>& series, std::size_t expected, const std::string& field) {
    if (series.size() != expected) {
        throw ScenarioError(field, "expected " + std::to_string(expected) + " values, got " +
                                           std::to_string(series.size()));
    }
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (!std::isfinite(series[t]) || series[t] < 0.0) {
            throw ScenarioError(field, "value at interval " + std::to_string(t) +
                                               " must be finite and non-negative");
        }
    }
}

void check_storage(const StorageSpec& s, const std::string& field) {
    auto positive = [&](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) throw ScenarioError(field + "." + name, "must be positive");
    };
    auto fraction = [&](double v, const char* name) {
        if (!(v > 0.0 && v <= 1.0)) throw ScenarioError(field + "." + name, "must lie in (0, 1]");
    };
    positive(s.charge_rate, "charge_rate");
    positive(s.discharge_rate, "discharge_rate");
    fraction(s.charge_eff, "charge_efficiency");
    fraction(s.discharge_eff, "discharge_efficiency");
    for (double v : {s.soe_min, s.soe_max, s.soe_init}) {
        if (!std::isfinite(v)) throw ScenarioError(field, "energy levels must be finite");
    }
    if (!(0.0 <= s.soe_min && s.soe_min <= s.soe_init && s.soe_init <= s.soe_max)) {
        throw ScenarioError(field, "requires 0 <= soe_min <= soe_initial <= soe_max");
    }
}

std::vector<double> rotated(const std::vector<double>& v, std::size_t shift) {
    std::vector<double> out(v.size());
    for (std::size_t t = 0; t < v.size(); ++t) out[t] = v[(t + shift) % v.size()];
    return out;
}

}  // namespace

std::size_t ApplianceSpec::adt_intervals(double hours_per_interval) const {
    return static_cast<std::size_t>(std::floor(adt_hours / hours_per_interval + kRatioSlack));
}

void validate(const Scenario& s) {
    const std::size_t T = s.grid.intervals;
    if (T < 1) throw ScenarioError("time.intervals", "must be at least 1");
    if (!std::isfinite(s.grid.hours_per_interval) || s.grid.hours_per_interval <= 0.0) {
        throw ScenarioError("time.hours_per_interval", "must be positive");
    }
    if (!std::isfinite(s.origin_hour)) throw ScenarioError("time.origin_hour", "must be finite");
    check_series(s.tariff.buy, T, "tariff.buy");
    check_series(s.tariff.sell, T, "tariff.sell");
    check_series(s.non_deferrable, T, "non_deferrable");
    check_series(s.pv_gen, T, "pv_generation");

    std::set<std::string> names;
    for (std::size_t a = 0; a < s.appliances.size(); ++a) {
        const ApplianceSpec& app = s.appliances[a];
        const std::string field = "appliances[" + std::to_string(a) + "]";
        if (app.name.empty()) throw ScenarioError(field + ".name", "must not be empty");
        if (!names.insert(app.name).second) throw ScenarioError(field + ".name", "duplicate name '" + app.name + "'");
        check_series(app.profile, T, field + ".profile");
        if (!std::isfinite(app.adt_hours) || app.adt_hours < 0.0) {
            throw ScenarioError(field + ".adt_hours", "must be finite and non-negative");
        }
    }

    if (s.ess) check_storage(s.ess->storage, "ess");
    if (s.ev) {
        check_storage(s.ev->storage, "ev");
        if (s.ev->arrival > s.ev->departure || s.ev->departure >= T) {
            throw ScenarioError("ev", "availability window [" + std::to_string(s.ev->arrival) + ", " +
                                              std::to_string(s.ev->departure) +
                                              "] must be a non-empty range inside the horizon");
        }
    }

    const Penalties& p = s.penalties;
    for (double e : {p.pv, p.ess, p.ev}) {
        if (!std::isfinite(e) || e < 0.0) throw ScenarioError("penalties", "must be finite and non-negative");
    }
    if (!(p.pv < p.ess && p.ess < p.ev)) throw ScenarioError("penalties", "ε1 < ε2 < ε3 violated");

    if (s.big_m) {
        for (double n : {s.big_m->import_limit, s.big_m->export_limit}) {
            if (!std::isfinite(n) || n <= 0.0) throw ScenarioError("big_m", "constants must be positive");
        }
    }
}

double scheduled_load(const Scenario& s, std::size_t t) {
    double total = s.non_deferrable.at(t);
    for (const ApplianceSpec& app : s.appliances) total += app.profile.at(t);
    return total;
}

BigM effective_big_m(const Scenario& s) {
    if (s.big_m) return *s.big_m;
    const std::size_t T = s.intervals();
    double import_need = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        double load = s.non_deferrable[t];
        for (const ApplianceSpec& app : s.appliances) {
            const std::size_t adt = app.adt_intervals(s.dt());
            const std::size_t first = t >= adt ? t - adt : 0;
            for (std::size_t src = first; src <= t; ++src) load += app.profile[src];
        }
        import_need = std::max(import_need, load);
    }
    double export_need = *std::max_element(s.pv_gen.begin(), s.pv_gen.end());
    if (s.ess) {
        import_need += s.ess->storage.charge_rate;
        export_need += s.ess->storage.discharge_rate * s.ess->storage.discharge_eff;
    }
    if (s.ev) {
        import_need += s.ev->storage.charge_rate;
        export_need += s.ev->storage.discharge_rate * s.ev->storage.discharge_eff;
    }
    const double n = std::max({import_need, export_need, 1.0});
    return BigM{n, n};
}

std::size_t interval_of_hour(const TimeGrid& grid, double origin_hour, double hour) {
    double offset = std::fmod(hour - origin_hour, 24.0);
    if (offset < 0) offset += 24.0;
    const double index = offset / grid.hours_per_interval;
    const double rounded = std::round(index);
    if (std::abs(index - rounded) > kRatioSlack) {
        throw ScenarioError("time", "hour " + std::to_string(hour) + " is not on the interval grid");
    }
    return static_cast<std::size_t>(rounded);
}

Scenario rotate_origin(const Scenario& s, double origin_hour) {
    if (std::abs(s.grid.horizon_hours() - 24.0) > kRatioSlack) {
        throw ScenarioError("time", "moving the origin needs a 24 h horizon");
    }
    const std::size_t T = s.intervals();
    const std::size_t shift = interval_of_hour(s.grid, s.origin_hour, origin_hour) % T;
    Scenario out = s;
    out.origin_hour = std::fmod(origin_hour, 24.0);
    if (out.origin_hour < 0) out.origin_hour += 24.0;
    out.tariff.buy = rotated(s.tariff.buy, shift);
    out.tariff.sell = rotated(s.tariff.sell, shift);
    out.non_deferrable = rotated(s.non_deferrable, shift);
    out.pv_gen = rotated(s.pv_gen, shift);
    for (ApplianceSpec& app : out.appliances) app.profile = rotated(app.profile, shift);
    if (out.ev) {
        out.ev->arrival = (s.ev->arrival + T - shift) % T;
        out.ev->departure = (s.ev->departure + T - shift) % T;
        if (out.ev->arrival > out.ev->departure) {
            throw ScenarioError("ev", "availability window wraps past the end of the horizon for origin hour " +
                                              std::to_string(origin_hour));
        }
    }
    return out;
}

}  // namespace hems
