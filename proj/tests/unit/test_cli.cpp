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
#include "hems/cli/commands.hpp"
#include "hems/scenario/scenario_io.hpp"
#include "json.hpp"

namespace hems::cli {

namespace fs = std::filesystem;

namespace {

const fs::path kHourly = fs::path(HEMS_DATA_DIR) / "reference_scenario_hourly.json";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result hems(std::vector<std::string> args) {
    args.insert(args.begin(), "hems");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Removed when the test binary exits.
struct ScratchRoot {
    fs::path path = fs::temp_directory_path() / ("hems-cli-test-" + std::to_string(std::random_device{}()));
    ~ScratchRoot() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch(const std::string& name) {
    static const ScratchRoot root;
    const fs::path p = root.path / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double bill(const fs::path& dir, const std::string& tag) {
    return nlohmann::json::parse(slurp(dir / ("cost_" + tag + ".json")))["bill_cents"].get<double>();
}

}  // namespace

TEST_CASE("solve writes every artifact and orders DSM costs", "[cli]") {
    const fs::path dir = scratch("solve");
    const Result r = hems({"solve", "--scenario", kHourly.string(), "--case", "A", "--dsm", "both", "--out",
                           dir.string(), "--dump-lp"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("A_dsm-on: bill") != std::string::npos);
    CHECK(r.out.find("A_dsm-off: bill") != std::string::npos);
    for (const char* stem : {"schedule_A_dsm-on.csv", "cost_A_dsm-on.json", "stats_A_dsm-on.json",
                             "scenario_A_dsm-on.json", "model_A_dsm-on.lp"}) {
        CHECK(fs::exists(dir / stem));
    }
    CHECK(bill(dir, "A_dsm-on") <= bill(dir, "A_dsm-off"));
    const auto stats = nlohmann::json::parse(slurp(dir / "stats_A_dsm-on.json"));
    CHECK(stats["status"] == "optimal");
    CHECK(slurp(dir / "model_A_dsm-on.lp").find("\nMinimize\n obj:") != std::string::npos);
}

TEST_CASE("PV lowers the bill", "[cli]") {
    const fs::path dir = scratch("pv");
    REQUIRE(hems({"solve", "--scenario", kHourly.string(), "--case", "A", "--out", dir.string()}).code == kExitOk);
    REQUIRE(hems({"solve", "--scenario", kHourly.string(), "--case", "B", "--out", dir.string()}).code == kExitOk);
    CHECK(bill(dir, "B_dsm-on") <= bill(dir, "A_dsm-on"));
}

TEST_CASE("unreachable vehicle charge fails naming the EV family", "[cli]") {
    const fs::path dir = scratch("infeasible");
    Scenario s = load_scenario_file(kHourly);
    // Two hours at 0.45 kWh/h cannot add the missing 3.2 kWh.
    s.ev->storage.charge_rate = 0.5;
    s.ev->arrival = 10;
    s.ev->departure = 11;
    std::ofstream(dir / "bad_ev.json") << serialize_scenario(s);
    const Result r = hems({"solve", "--scenario", (dir / "bad_ev.json").string(), "--out", dir.string()});
    CHECK(r.code == kExitFail);
    CHECK(r.err.find("infeasible") != std::string::npos);
    CHECK(r.err.find("families at fault: ev") != std::string::npos);
}

TEST_CASE("validate accepts fresh output and flags tampering", "[cli]") {
    const fs::path dir = scratch("validate");
    REQUIRE(hems({"solve", "--scenario", kHourly.string(), "--case", "C", "--out", dir.string()}).code == kExitOk);
    const std::string scenario = (dir / "scenario_C_dsm-on.json").string();
    const fs::path schedule = dir / "schedule_C_dsm-on.csv";

    Result ok = hems({"validate", "--scenario", scenario, "--schedule", schedule.string(), "--report",
                      (dir / "report.json").string()});
    CHECK(ok.code == kExitOk);
    CHECK(nlohmann::json::parse(slurp(dir / "report.json"))["pass"] == true);
    // The original document plus the case selector describes the same problem.
    CHECK(hems({"validate", "--scenario", kHourly.string(), "--case", "C", "--schedule", schedule.string()}).code ==
          kExitOk);

    SECTION("one perturbed energy level") {
        std::istringstream in(slurp(schedule));
        std::ostringstream tampered;
        std::string line;
        int row = 0;
        std::size_t soe_col = 0;
        while (std::getline(in, line)) {
            if (row == 1) {
                std::istringstream h(line);
                std::string cell;
                for (std::size_t k = 0; std::getline(h, cell, ','); ++k) {
                    if (cell == "ess_soe_kwh") soe_col = k;
                }
            }
            if (row == 5) {
                std::vector<std::string> cells;
                std::istringstream l(line);
                std::string cell;
                while (std::getline(l, cell, ',')) cells.push_back(cell);
                cells[soe_col] = std::to_string(std::stod(cells[soe_col]) + 0.25);
                line.clear();
                for (std::size_t k = 0; k < cells.size(); ++k) line += (k ? "," : "") + cells[k];
            }
            tampered << line << '\n';
            ++row;
        }
        REQUIRE(soe_col > 0);
        std::ofstream(dir / "tampered.csv") << tampered.str();
        const Result r = hems({"validate", "--scenario", scenario, "--schedule", (dir / "tampered.csv").string()});
        CHECK(r.code == kExitFail);
        CHECK(r.out.find("ess: FAIL") != std::string::npos);
        CHECK(r.out.find("balance: pass") != std::string::npos);
    }
    SECTION("schedule for a different horizon") {
        const Result r = hems({"validate", "--scenario", (fs::path(HEMS_DATA_DIR) / "reference_scenario.json").string(),
                               "--case", "C", "--schedule", schedule.string()});
        CHECK(r.code == kExitUsage);
        CHECK(r.err.find("intervals") != std::string::npos);
    }
    SECTION("malformed cell reports its line") {
        std::string text = slurp(schedule);
        text.replace(text.find('\n', text.find('\n') + 1) + 3, 1, "z");
        std::ofstream(dir / "broken.csv") << text;
        const Result r = hems({"validate", "--scenario", scenario, "--schedule", (dir / "broken.csv").string()});
        CHECK(r.code == kExitUsage);
        CHECK(r.err.find("line 3") != std::string::npos);
    }
}

TEST_CASE("sweep output is byte-identical across runs", "[cli]") {
    const fs::path a = scratch("sweep-a");
    const fs::path b = scratch("sweep-b");
    const Result ra = hems({"sweep", "--scenario", kHourly.string(), "--out", a.string()});
    const Result rb = hems({"sweep", "--scenario", kHourly.string(), "--out", b.string()});
    REQUIRE(ra.code == kExitOk);
    REQUIRE(rb.code == kExitOk);
    const std::string summary = slurp(a / "summary.csv");
    CHECK(summary == slurp(b / "summary.csv"));
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 9);
    CHECK(fs::exists(a / "timing.csv"));
    CHECK(slurp(a / "schedule_D_dsm-off.csv") == slurp(b / "schedule_D_dsm-off.csv"));
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(hems({}).code == kExitUsage);
    CHECK(hems({"frobnicate"}).code == kExitUsage);
    CHECK(hems({"solve", "--scenario", kHourly.string(), "--dsm", "maybe"}).code == kExitUsage);
    CHECK(hems({"solve", "--scenario", kHourly.string(), "--case", "E"}).code == kExitUsage);
    CHECK(hems({"solve", "--scenario", "/does/not/exist.json"}).code == kExitUsage);
    CHECK(hems({"solve", "--scenario", kHourly.string(), "--origin-hour", "7", "--case", "D"}).code == kExitUsage);
    CHECK(hems({"--help"}).code == kExitOk);
}

}  // namespace hems::cli
