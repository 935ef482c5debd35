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

#include "hems/scenario/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hems {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// ---------------------------------------------------------------- CSV

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

CsvTable read_csv(std::istream& in, std::string source) {
    CsvTable table;
    table.source = std::move(source);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cells = split(t);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw ScenarioError(table.source, "line " + std::to_string(line_no) + ": expected " +
                                                      std::to_string(table.header.size()) + " fields, got " +
                                                      std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    if (table.header.empty()) throw ScenarioError(table.source, "missing header line");
    return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string(), "cannot open file");
    return read_csv(in, path.string());
}

bool CsvTable::has_column(std::string_view name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

std::size_t CsvTable::column_index(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ScenarioError(source, "missing column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, std::size_t column) const {
    const std::string& cell = rows.at(row).at(column);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ScenarioError(source, "line " + std::to_string(line_numbers[row]) + ": column '" +
                                            header[column] + "' is not a number: '" + cell + "'");
    }
    return v;
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
    const std::size_t c = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) out.push_back(number(r, c));
    return out;
}

// ---------------------------------------------------------------- JSON

namespace {

class Reader {
 public:
    Reader(const Json& doc, std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {
        if (doc.contains("series_csv")) {
            if (!doc["series_csv"].is_string()) throw ScenarioError("series_csv", "must be a file name");
            csv_path_ = base_dir_ / doc["series_csv"].get<std::string>();
        }
    }

    static void only_keys(const Json& obj, const std::string& field, std::initializer_list<const char*> keys) {
        if (!obj.is_object()) throw ScenarioError(field, "must be an object");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, _] : obj.items()) {
            if (!allowed.count(k)) throw ScenarioError(field.empty() ? k : field + "." + k, "unknown key");
        }
    }

    static double number(const Json& obj, const std::string& key, const std::string& field) {
        if (!obj.contains(key)) throw ScenarioError(field + "." + key, "missing");
        if (!obj[key].is_number()) throw ScenarioError(field + "." + key, "must be a number");
        return obj[key].get<double>();
    }

    static std::optional<double> maybe_number(const Json& obj, const std::string& key, const std::string& field) {
        if (!obj.contains(key)) return std::nullopt;
        return number(obj, key, field);
    }

    static bool flag(const Json& obj, const std::string& key, bool fallback, const std::string& field) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_boolean()) throw ScenarioError(field + "." + key, "must be true or false");
        return obj[key].get<bool>();
    }

    static std::size_t index(const Json& obj, const std::string& key, const std::string& field) {
        if (!obj[key].is_number_unsigned()) throw ScenarioError(field + "." + key, "must be a non-negative integer");
        return obj[key].get<std::size_t>();
    }

    // An array, a scalar broadcast over the horizon, or {"csv": "<column>"}.
    std::vector<double> series(const Json& value, std::size_t T, const std::string& field) {
        if (value.is_number()) return std::vector<double>(T, value.get<double>());
        if (value.is_array()) {
            std::vector<double> out;
            for (const auto& v : value) {
                if (!v.is_number()) throw ScenarioError(field, "array entries must be numbers");
                out.push_back(v.get<double>());
            }
            return out;
        }
        if (value.is_object() && value.contains("csv") && value["csv"].is_string()) {
            only_keys(value, field, {"csv"});
            return table(field).numeric_column(value["csv"].get<std::string>());
        }
        throw ScenarioError(field, "expected an array, a number, or {\"csv\": column}");
    }

 private:
    const CsvTable& table(const std::string& field) {
        if (!csv_path_) throw ScenarioError(field, "refers to a CSV column but no series_csv is given");
        if (!table_) table_ = read_csv_file(*csv_path_);
        return *table_;
    }

    std::filesystem::path base_dir_;
    std::optional<std::filesystem::path> csv_path_;
    std::optional<CsvTable> table_;
};

StorageSpec read_storage(const Json& j, const std::string& field, std::optional<double> default_init) {
    StorageSpec s;
    s.charge_rate = Reader::number(j, "charge_rate", field);
    s.discharge_rate = Reader::number(j, "discharge_rate", field);
    s.charge_eff = Reader::number(j, "charge_efficiency", field);
    s.discharge_eff = Reader::number(j, "discharge_efficiency", field);
    s.soe_min = Reader::number(j, "soe_min", field);
    s.soe_max = Reader::number(j, "soe_max", field);
    if (auto init = Reader::maybe_number(j, "soe_initial", field)) {
        s.soe_init = *init;
    } else if (default_init) {
        s.soe_init = *default_init * s.soe_max;
    } else {
        throw ScenarioError(field + ".soe_initial", "missing");
    }
    return s;
}

OrderedJson write_storage(const StorageSpec& s) {
    OrderedJson j;
    j["charge_rate"] = s.charge_rate;
    j["discharge_rate"] = s.discharge_rate;
    j["charge_efficiency"] = s.charge_eff;
    j["discharge_efficiency"] = s.discharge_eff;
    j["soe_min"] = s.soe_min;
    j["soe_max"] = s.soe_max;
    j["soe_initial"] = s.soe_init;
    return j;
}

// Share of capacity the vehicle holds when it arrives, unless stated.
constexpr double kEvArrivalFraction = 0.8;

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ScenarioError("document", e.what());
    }
    Reader::only_keys(doc, "", {"schema", "name", "time", "series_csv", "tariff", "non_deferrable",
                                "pv_generation", "appliances", "ess", "ev", "penalties", "big_m"});
    if (!doc.contains("schema") || doc["schema"] != std::string(kScenarioSchema)) {
        throw ScenarioError("schema", "expected \"" + std::string(kScenarioSchema) + "\"");
    }
    Reader reader(doc, base_dir);
    Scenario s;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ScenarioError("name", "must be a string");
        s.name = doc["name"].get<std::string>();
    }

    if (!doc.contains("time")) throw ScenarioError("time", "missing");
    const Json& time = doc["time"];
    Reader::only_keys(time, "time", {"intervals", "hours_per_interval", "origin_hour"});
    if (!time.contains("intervals")) throw ScenarioError("time.intervals", "missing");
    s.grid.intervals = Reader::index(time, "intervals", "time");
    s.grid.hours_per_interval = Reader::number(time, "hours_per_interval", "time");
    s.origin_hour = Reader::maybe_number(time, "origin_hour", "time").value_or(0.0);
    const std::size_t T = s.grid.intervals;

    if (!doc.contains("tariff")) throw ScenarioError("tariff", "missing");
    Reader::only_keys(doc["tariff"], "tariff", {"buy", "sell"});
    if (!doc["tariff"].contains("buy")) throw ScenarioError("tariff.buy", "missing");
    if (!doc["tariff"].contains("sell")) throw ScenarioError("tariff.sell", "missing");
    s.tariff.buy = reader.series(doc["tariff"]["buy"], T, "tariff.buy");
    s.tariff.sell = reader.series(doc["tariff"]["sell"], T, "tariff.sell");

    if (!doc.contains("non_deferrable")) throw ScenarioError("non_deferrable", "missing");
    s.non_deferrable = reader.series(doc["non_deferrable"], T, "non_deferrable");
    s.pv_gen = doc.contains("pv_generation") ? reader.series(doc["pv_generation"], T, "pv_generation")
                                             : std::vector<double>(T, 0.0);

    if (doc.contains("appliances")) {
        if (!doc["appliances"].is_array()) throw ScenarioError("appliances", "must be an array");
        for (std::size_t a = 0; a < doc["appliances"].size(); ++a) {
            const Json& j = doc["appliances"][a];
            const std::string field = "appliances[" + std::to_string(a) + "]";
            Reader::only_keys(j, field, {"name", "profile", "adt_hours"});
            ApplianceSpec app;
            if (!j.contains("name") || !j["name"].is_string()) throw ScenarioError(field + ".name", "missing");
            app.name = j["name"].get<std::string>();
            if (!j.contains("profile")) throw ScenarioError(field + ".profile", "missing");
            app.profile = reader.series(j["profile"], T, field + ".profile");
            app.adt_hours = Reader::maybe_number(j, "adt_hours", field).value_or(0.0);
            s.appliances.push_back(std::move(app));
        }
    }

    if (doc.contains("ess") && !doc["ess"].is_null()) {
        const Json& j = doc["ess"];
        Reader::only_keys(j, "ess", {"charge_rate", "discharge_rate", "charge_efficiency", "discharge_efficiency",
                                     "soe_min", "soe_max", "soe_initial", "terminal_reserve"});
        EssSpec ess;
        ess.storage = read_storage(j, "ess", std::nullopt);
        ess.terminal_reserve = Reader::flag(j, "terminal_reserve", true, "ess");
        s.ess = ess;
    }

    if (doc.contains("ev") && !doc["ev"].is_null()) {
        const Json& j = doc["ev"];
        Reader::only_keys(j, "ev", {"charge_rate", "discharge_rate", "charge_efficiency", "discharge_efficiency",
                                    "soe_min", "soe_max", "soe_initial", "arrival", "departure", "arrival_hour",
                                    "departure_hour", "require_full_at_departure"});
        EVSpec ev;
        ev.storage = read_storage(j, "ev", kEvArrivalFraction);
        if (j.contains("arrival") == j.contains("arrival_hour")) {
            throw ScenarioError("ev.arrival", "give exactly one of arrival or arrival_hour");
        }
        if (j.contains("departure") == j.contains("departure_hour")) {
            throw ScenarioError("ev.departure", "give exactly one of departure or departure_hour");
        }
        if (s.grid.hours_per_interval <= 0.0) throw ScenarioError("time.hours_per_interval", "must be positive");
        ev.arrival = j.contains("arrival")
                ? Reader::index(j, "arrival", "ev")
                : interval_of_hour(s.grid, s.origin_hour, Reader::number(j, "arrival_hour", "ev"));
        if (j.contains("departure")) {
            ev.departure = Reader::index(j, "departure", "ev");
        } else {
            // The last plugged-in interval is the one ending at the departure hour.
            const std::size_t leave = interval_of_hour(s.grid, s.origin_hour, Reader::number(j, "departure_hour", "ev"));
            ev.departure = (leave == 0 ? T : leave) - 1;
        }
        ev.require_full_at_departure = Reader::flag(j, "require_full_at_departure", true, "ev");
        s.ev = ev;
    }

    if (doc.contains("penalties")) {
        const Json& j = doc["penalties"];
        Reader::only_keys(j, "penalties", {"pv", "ess", "ev"});
        s.penalties.pv = Reader::maybe_number(j, "pv", "penalties").value_or(s.penalties.pv);
        s.penalties.ess = Reader::maybe_number(j, "ess", "penalties").value_or(s.penalties.ess);
        s.penalties.ev = Reader::maybe_number(j, "ev", "penalties").value_or(s.penalties.ev);
    }
    if (doc.contains("big_m") && !doc["big_m"].is_null()) {
        const Json& j = doc["big_m"];
        Reader::only_keys(j, "big_m", {"import", "export"});
        s.big_m = BigM{Reader::number(j, "import", "big_m"), Reader::number(j, "export", "big_m")};
    }

    validate(s);
    return s;
}

Scenario load_scenario(std::istream& in, const std::filesystem::path& base_dir) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), base_dir);
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string(), "cannot open file");
    return load_scenario(in, path.parent_path());
}

std::string serialize_scenario(const Scenario& s) {
    OrderedJson doc;
    doc["schema"] = kScenarioSchema;
    doc["name"] = s.name;
    doc["time"] = {{"intervals", s.grid.intervals},
                   {"hours_per_interval", s.grid.hours_per_interval},
                   {"origin_hour", s.origin_hour}};
    doc["tariff"] = {{"buy", s.tariff.buy}, {"sell", s.tariff.sell}};
    doc["non_deferrable"] = s.non_deferrable;
    doc["pv_generation"] = s.pv_gen;
    doc["appliances"] = OrderedJson::array();
    for (const ApplianceSpec& app : s.appliances) {
        doc["appliances"].push_back({{"name", app.name}, {"profile", app.profile}, {"adt_hours", app.adt_hours}});
    }
    if (s.ess) {
        OrderedJson j = write_storage(s.ess->storage);
        j["terminal_reserve"] = s.ess->terminal_reserve;
        doc["ess"] = j;
    }
    if (s.ev) {
        OrderedJson j = write_storage(s.ev->storage);
        j["arrival"] = s.ev->arrival;
        j["departure"] = s.ev->departure;
        j["require_full_at_departure"] = s.ev->require_full_at_departure;
        doc["ev"] = j;
    }
    doc["penalties"] = {{"pv", s.penalties.pv}, {"ess", s.penalties.ess}, {"ev", s.penalties.ev}};
    if (s.big_m) doc["big_m"] = {{"import", s.big_m->import_limit}, {"export", s.big_m->export_limit}};
    return doc.dump(2) + "\n";
}

}  // namespace hems
