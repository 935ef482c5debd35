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

#include "hems/formulation/schedule_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hems/scenario/scenario_io.hpp"

namespace hems {

namespace {

constexpr const char* kDestPrefix = "dest_";

struct Column {
    const char* name;
    std::vector<double> Schedule::*plain;
    std::vector<double> StorageTrace::*storage;
    StorageTrace Schedule::*device;
};

const std::vector<Column>& columns() {
    static const std::vector<Column> cols{
            {"grid_buy_kw", &Schedule::grid_buy, nullptr, nullptr},
            {"grid_sell_kw", &Schedule::grid_sell, nullptr, nullptr},
            {"pv_used_kw", &Schedule::pv_used, nullptr, nullptr},
            {"pv_sold_kw", &Schedule::pv_sold, nullptr, nullptr},
            {"ess_charge_kw", nullptr, &StorageTrace::charge, &Schedule::ess},
            {"ess_discharge_kw", nullptr, &StorageTrace::discharge, &Schedule::ess},
            {"ess_used_kw", nullptr, &StorageTrace::used, &Schedule::ess},
            {"ess_sold_kw", nullptr, &StorageTrace::sold, &Schedule::ess},
            {"ess_soe_kwh", nullptr, &StorageTrace::soe, &Schedule::ess},
            {"ev_charge_kw", nullptr, &StorageTrace::charge, &Schedule::ev},
            {"ev_discharge_kw", nullptr, &StorageTrace::discharge, &Schedule::ev},
            {"ev_used_kw", nullptr, &StorageTrace::used, &Schedule::ev},
            {"ev_sold_kw", nullptr, &StorageTrace::sold, &Schedule::ev},
            {"ev_soe_kwh", nullptr, &StorageTrace::soe, &Schedule::ev},
            {"served_load_kw", &Schedule::served_load, nullptr, nullptr},
    };
    return cols;
}

std::vector<double>& series(Schedule& s, const Column& c) { return c.plain ? s.*c.plain : (s.*c.device).*c.storage; }

const std::vector<double>& series(const Schedule& s, const Column& c) {
    return c.plain ? s.*c.plain : (s.*c.device).*c.storage;
}

// Shortest text that parses back to the same double.
std::string format(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

void write_schedule_csv(std::ostream& out, const Schedule& schedule) {
    out << kScheduleCsvVersion << "\ninterval";
    for (const Column& c : columns()) out << ',' << c.name;
    for (const std::string& name : schedule.appliance_names) out << ',' << kDestPrefix << name;
    out << '\n';
    for (std::size_t t = 0; t < schedule.intervals(); ++t) {
        out << t;
        for (const Column& c : columns()) out << ',' << format(series(schedule, c)[t]);
        for (const auto& dest : schedule.destination) out << ',' << dest[t];
        out << '\n';
    }
}

Schedule read_schedule_csv(std::istream& in, const std::string& source) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.rfind(kScheduleCsvVersion, 0) != 0) {
        throw ScenarioError(source, "line 1: expected '" + std::string(kScheduleCsvVersion) + "'");
    }
    std::istringstream body(text);
    const CsvTable table = read_csv(body, source);

    Schedule s;
    const std::size_t interval_col = table.column_index("interval");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.number(r, interval_col) != static_cast<double>(r)) {
            throw ScenarioError(source, "line " + std::to_string(table.line_numbers[r]) + ": expected interval " +
                                                std::to_string(r));
        }
    }
    for (const Column& c : columns()) series(s, c) = table.numeric_column(c.name);
    for (std::size_t k = 0; k < table.header.size(); ++k) {
        const std::string& h = table.header[k];
        if (h.rfind(kDestPrefix, 0) != 0) continue;
        s.appliance_names.push_back(h.substr(std::string(kDestPrefix).size()));
        std::vector<int> dest;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const double v = table.number(r, k);
            if (v != static_cast<double>(static_cast<int>(v))) {
                throw ScenarioError(source, "line " + std::to_string(table.line_numbers[r]) + ": column '" + h +
                                                    "' must hold an interval index");
            }
            dest.push_back(static_cast<int>(v));
        }
        s.destination.push_back(std::move(dest));
    }
    return s;
}

Schedule read_schedule_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string(), "cannot open file");
    return read_schedule_csv(in, path.string());
}

}  // namespace hems
