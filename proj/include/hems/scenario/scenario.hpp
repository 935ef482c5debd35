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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hems {

/// Raised for malformed or inconsistent scenario data. `field()` names the
/// offending document field, e.g. "tariff.buy" or "penalties".
class ScenarioError : public std::runtime_error {
 public:
    ScenarioError(std::string field, const std::string& message)
            : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

 private:
    std::string field_;
};

struct TimeGrid {
    std::size_t intervals = 24;
    double hours_per_interval = 1.0;

    double horizon_hours() const { return static_cast<double>(intervals) * hours_per_interval; }
    bool operator==(const TimeGrid&) const = default;
};

/// Prices in cents/kWh, one entry per interval.
struct Tariff {
    std::vector<double> buy;
    std::vector<double> sell;
    bool operator==(const Tariff&) const = default;
};

/// A deferrable appliance: its normally scheduled power (kW per interval) and
/// how long each block may be delayed.
struct ApplianceSpec {
    std::string name;
    std::vector<double> profile;
    double adt_hours = 0.0;

    /// floor(adt_hours / dt): a fractional remainder is never granted.
    std::size_t adt_intervals(double hours_per_interval) const;
    bool operator==(const ApplianceSpec&) const = default;
};

/// Battery parameters shared by the stationary store and the vehicle.
/// Rates in kW, energies in kWh, efficiencies in (0, 1].
struct StorageSpec {
    double charge_rate = 0.0;
    double discharge_rate = 0.0;
    double charge_eff = 1.0;
    double discharge_eff = 1.0;
    double soe_min = 0.0;
    double soe_max = 0.0;
    double soe_init = 0.0;
    bool operator==(const StorageSpec&) const = default;
};

struct EssSpec {
    StorageSpec storage;
    /// Require the end-of-day energy to be at least the starting energy.
    bool terminal_reserve = true;
    bool operator==(const EssSpec&) const = default;
};

/// The vehicle is plugged in for the contiguous interval range
/// [arrival, departure] and arrives holding storage.soe_init.
struct EVSpec {
    StorageSpec storage;
    std::size_t arrival = 0;
    std::size_t departure = 0;
    bool require_full_at_departure = true;

    bool available(std::size_t t) const { return t >= arrival && t <= departure; }
    std::size_t window_length() const { return departure - arrival + 1; }
    bool operator==(const EVSpec&) const = default;
};

/// Per-kWh export penalties in cents; the ordering pv < ess < ev makes PV the
/// preferred export source.
struct Penalties {
    double pv = 1e-4;
    double ess = 2e-4;
    double ev = 3e-4;
    bool operator==(const Penalties&) const = default;
};

/// Constants of the buy/sell exclusivity rows, in kW.
struct BigM {
    double import_limit = 0.0;
    double export_limit = 0.0;
    bool operator==(const BigM&) const = default;
};

struct Scenario {
    std::string name;
    TimeGrid grid;
    /// Clock hour at which interval 0 starts.
    double origin_hour = 0.0;
    Tariff tariff;
    std::vector<double> non_deferrable;
    std::vector<ApplianceSpec> appliances;
    std::optional<EssSpec> ess;
    std::optional<EVSpec> ev;
    std::vector<double> pv_gen;
    Penalties penalties;
    /// Unset means "derive from the scenario", see effective_big_m().
    std::optional<BigM> big_m;

    std::size_t intervals() const { return grid.intervals; }
    double dt() const { return grid.hours_per_interval; }
    bool operator==(const Scenario&) const = default;
};

/// Checks every invariant; throws ScenarioError naming the first bad field.
void validate(const Scenario& scenario);

/// The configured constants, or the smallest values that never cut off a
/// feasible schedule: the largest load an interval can see once every block
/// that may be delayed into it has landed, plus both charge rates, and the
/// largest export (PV plus both delivered discharge rates). Both limits are set
/// to the larger of the two.
BigM effective_big_m(const Scenario& scenario);

/// Non-deferrable load plus every appliance's scheduled load at t, in kW.
double scheduled_load(const Scenario& scenario, std::size_t t);

/// Re-indexes every series so interval 0 starts at `origin_hour`. Requires a
/// 24 h horizon whose interval length divides the shift; throws when the EV
/// window would wrap past the end of the horizon.
Scenario rotate_origin(const Scenario& scenario, double origin_hour);

/// Interval index of the clock hour `hour` on a grid starting at `origin_hour`.
std::size_t interval_of_hour(const TimeGrid& grid, double origin_hour, double hour);

}  // namespace hems
