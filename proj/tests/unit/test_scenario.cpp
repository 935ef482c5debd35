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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "catch2/catch_amalgamated.hpp"
#include "hems/scenario/cases.hpp"
#include "hems/scenario/scenario.hpp"
#include "hems/scenario/scenario_io.hpp"

namespace hems {

namespace {

const std::filesystem::path kData{HEMS_DATA_DIR};

std::string minimal_doc(const std::string& extra = "") {
    return R"({
  "schema": "hems-scenario/1",
  "time": {"intervals": 24, "hours_per_interval": 1},
  "tariff": {"buy": 10, "sell": 3},
  "non_deferrable": 0.5)" + extra + "\n}";
}

std::string field_of(const std::string& doc) {
    try {
        parse_scenario(doc);
    } catch (const ScenarioError& e) {
        return e.field();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("flat sell price broadcasts over the horizon", "[scenario]") {
    Scenario s = parse_scenario(minimal_doc());
    REQUIRE(s.intervals() == 24);
    for (double v : s.tariff.sell) CHECK(v == 3.0);
    CHECK(s.pv_gen == std::vector<double>(24, 0.0));
}

TEST_CASE("penalty ordering is enforced", "[scenario]") {
    const std::string doc = minimal_doc(R"(, "penalties": {"pv": 0.0002, "ess": 0.0001, "ev": 0.0003})");
    try {
        parse_scenario(doc);
        FAIL("expected an error");
    } catch (const ScenarioError& e) {
        CHECK(e.field() == "penalties");
        CHECK(std::string(e.what()).find("ε1 < ε2 < ε3 violated") != std::string::npos);
    }
}

TEST_CASE("omitted storage blocks leave both devices absent", "[scenario]") {
    Scenario s = parse_scenario(minimal_doc());
    CHECK_FALSE(s.ess.has_value());
    CHECK_FALSE(s.ev.has_value());
    CHECK(s.appliances.empty());
}

TEST_CASE("errors name the offending field", "[scenario]") {
    CHECK(field_of("{not json") == "document");
    CHECK(field_of(R"({"time": {"intervals": 2, "hours_per_interval": 1}})") == "schema");
    CHECK(field_of(minimal_doc(R"(, "pv_generation": [1, 2])")) == "pv_generation");
    CHECK(field_of(minimal_doc(R"(, "bogus": 1)")) == "bogus");
    CHECK(field_of(minimal_doc(R"(, "appliances": [{"name": "w", "profile": -1}])")) == "appliances[0].profile");
    CHECK(field_of(minimal_doc(R"(, "ess": {"charge_rate": 1, "discharge_rate": 1, "charge_efficiency": 1.2,
        "discharge_efficiency": 1, "soe_min": 0, "soe_max": 1, "soe_initial": 0})")) == "ess.charge_efficiency");
    CHECK(field_of(minimal_doc(R"(, "ess": {"charge_rate": 1, "discharge_rate": 1, "charge_efficiency": 1,
        "discharge_efficiency": 1, "soe_min": 0, "soe_max": 1, "soe_initial": 2})")) == "ess");
    CHECK(field_of(minimal_doc(R"(, "big_m": {"import": 0, "export": 5})")) == "big_m");
    CHECK(field_of(minimal_doc(R"(, "tariff": {"buy": {"csv": "price"}, "sell": 3})")) == "tariff.buy");
}

TEST_CASE("EV window from clock hours and default arrival charge", "[scenario]") {
    std::string doc = R"({
  "schema": "hems-scenario/1",
  "time": {"intervals": 48, "hours_per_interval": 0.5, "origin_hour": 20},
  "tariff": {"buy": 10, "sell": 3},
  "non_deferrable": 0.5,
  "ev": {"charge_rate": 3.3, "discharge_rate": 3.3, "charge_efficiency": 0.9, "discharge_efficiency": 0.9,
         "soe_min": 4, "soe_max": 16, "arrival_hour": 20, "departure_hour": 8}
})";
    Scenario s = parse_scenario(doc);
    REQUIRE(s.ev);
    CHECK(s.ev->arrival == 0);
    CHECK(s.ev->departure == 23);
    CHECK(s.ev->storage.soe_init == Catch::Approx(0.8 * 16));
    CHECK(s.ev->require_full_at_departure);
}

TEST_CASE("CSV series import", "[scenario][csv]") {
    SECTION("reference hourly document reads its series from CSV") {
        Scenario hourly = load_scenario_file(kData / "reference_scenario_hourly.json");
        Scenario half = load_scenario_file(kData / "reference_scenario.json");
        REQUIRE(hourly.intervals() == 24);
        REQUIRE(half.intervals() == 48);
        for (std::size_t t = 0; t < 24; ++t) {
            CHECK(hourly.tariff.buy[t] == half.tariff.buy[2 * t]);
            CHECK(hourly.non_deferrable[t] == half.non_deferrable[2 * t + 1]);
            CHECK(hourly.tariff.sell[t] == 3.0);
        }
        REQUIRE(hourly.appliances.size() == 4);
        CHECK(hourly.ev->departure == 11);
    }
    SECTION("bad cells report their line") {
        std::istringstream in("# comment\nbuy,sell\n1,2\n3,x\n");
        CsvTable table = read_csv(in, "prices.csv");
        CHECK(table.rows.size() == 2);
        CHECK(table.numeric_column("buy") == std::vector<double>{1, 3});
        try {
            table.numeric_column("sell");
            FAIL("expected an error");
        } catch (const ScenarioError& e) {
            CHECK(std::string(e.what()).find("line 4") != std::string::npos);
        }
        std::istringstream ragged("a,b\n1\n");
        CHECK_THROWS_AS(read_csv(ragged, "r.csv"), ScenarioError);
    }
}

TEST_CASE("serialize then parse returns an equal scenario", "[scenario][property]") {
    for (const char* file : {"reference_scenario.json", "reference_scenario_hourly.json"}) {
        Scenario s = load_scenario_file(kData / file);
        CHECK(parse_scenario(serialize_scenario(s)) == s);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> value(0.0, 20.0);
    std::uniform_int_distribution<int> len(1, 30);
    for (int trial = 0; trial < 50; ++trial) {
        Scenario s;
        s.grid.intervals = static_cast<std::size_t>(len(rng));
        s.grid.hours_per_interval = 24.0 / static_cast<double>(s.grid.intervals);
        auto series = [&] {
            std::vector<double> v(s.grid.intervals);
            for (double& x : v) x = value(rng) / 3.0;
            return v;
        };
        s.tariff = {series(), series()};
        s.non_deferrable = series();
        s.pv_gen = series();
        s.appliances.push_back({"a" + std::to_string(trial), series(), value(rng) / 7.0});
        if (trial % 2 == 0) {
            StorageSpec st{1.1, 0.9, 0.93, 0.97, 0.1, 5.3, 2.2};
            s.ess = EssSpec{st, trial % 4 == 0};
        }
        validate(s);
        CHECK(parse_scenario(serialize_scenario(s)) == s);
    }
}

TEST_CASE("case synthesis", "[scenario][cases]") {
    const Scenario seed = load_scenario_file(kData / "reference_scenario.json");
    SECTION("A without DSM has loads only") {
        Scenario a = synth_case(CaseId::kA, false, seed);
        CHECK(a.pv_gen == std::vector<double>(a.intervals(), 0.0));
        CHECK_FALSE(a.ess);
        CHECK_FALSE(a.ev);
        for (const auto& app : a.appliances) CHECK(app.adt_hours == 0.0);
    }
    SECTION("D with DSM keeps every device and the appliance delay set") {
        Scenario d = synth_case(CaseId::kD, true, seed);
        CHECK(d.ess);
        CHECK(d.ev);
        CHECK(d.pv_gen == seed.pv_gen);
        std::vector<double> adt;
        for (const auto& app : d.appliances) adt.push_back(app.adt_hours);
        CHECK(adt == std::vector<double>{4, 3, 1.5, 1.5});
        CHECK(d.appliances[2].adt_intervals(d.dt()) == 3);
    }
    SECTION("B and C add PV then the battery") {
        Scenario b = synth_case(CaseId::kB, true, seed);
        Scenario c = synth_case(CaseId::kC, true, seed);
        CHECK(b.pv_gen == seed.pv_gen);
        CHECK_FALSE(b.ess);
        CHECK(c.ess);
        CHECK_FALSE(c.ev);
    }
    SECTION("DSM off zeroes every delay") {
        for (CaseId id : kAllCases) {
            Scenario s = synth_case(id, false, seed);
            for (const auto& app : s.appliances) CHECK(app.adt_intervals(s.dt()) == 0);
        }
    }
    SECTION("case names parse") {
        CHECK(parse_case("c") == CaseId::kC);
        CHECK_THROWS_AS(parse_case("E"), std::invalid_argument);
    }
}

TEST_CASE("delay in intervals rounds down", "[scenario]") {
    ApplianceSpec app{"hvac", {}, 1.5};
    CHECK(app.adt_intervals(1.0) == 1);
    CHECK(app.adt_intervals(0.5) == 3);
    CHECK(ApplianceSpec{"x", {}, 0.3}.adt_intervals(0.1) == 3);
}

TEST_CASE("big-M defaults cover shifted load and both storages", "[scenario]") {
    Scenario s = parse_scenario(minimal_doc(
            R"(, "appliances": [{"name": "w", "profile": [2,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0], "adt_hours": 1},
                                 {"name": "d", "profile": [0,3,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}])"));
    BigM m = effective_big_m(s);
    // Interval 1 can host the washer block from 0 and the dryer block: 0.5 + 2 + 3.
    CHECK(m.import_limit == Catch::Approx(5.5));
    CHECK(m.export_limit == m.import_limit);
}

TEST_CASE("moving the horizon origin rotates series and the EV window", "[scenario]") {
    const Scenario s = load_scenario_file(kData / "reference_scenario_hourly.json");
    Scenario r = rotate_origin(s, 18);
    CHECK(r.origin_hour == 18);
    CHECK(r.tariff.buy[2] == s.tariff.buy[0]);
    CHECK(r.ev->arrival == 2);
    CHECK(r.ev->departure == 13);
    CHECK(rotate_origin(r, 20) == s);
    CHECK_THROWS_AS(rotate_origin(s, 21), ScenarioError);  // the window would wrap
}

}  // namespace hems
