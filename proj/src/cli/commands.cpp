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

#include "hems/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hems/formulation/cost.hpp"
#include "hems/formulation/formulation.hpp"
#include "hems/formulation/schedule.hpp"
#include "hems/formulation/schedule_csv.hpp"
#include "hems/milp/lp_format.hpp"
#include "hems/scenario/cases.hpp"
#include "hems/scenario/scenario_io.hpp"
#include "hems/validation/audit.hpp"
#include "json.hpp"

namespace hems::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

struct Run {
    std::string case_name;  // "scenario" when no case was synthesized
    bool dsm = true;
    Scenario scenario;

    std::string tag() const { return case_name + (dsm ? "_dsm-on" : "_dsm-off"); }
};

struct Outcome {
    milp::SolveStatus status = milp::SolveStatus::kInfeasible;
    CostBreakdown cost;
    double exported_kwh = 0.0;
    std::size_t nodes = 0;
    std::size_t lp_iterations = 0;
    double seconds = 0.0;
    std::vector<Family> culprits;
};

std::vector<bool> dsm_settings(const std::string& dsm) {
    if (dsm == "on") return {true};
    if (dsm == "off") return {false};
    if (dsm == "both") return {true, false};
    throw UsageError("--dsm must be on, off or both, got '" + dsm + "'");
}

Scenario load_base(const std::filesystem::path& path, const std::optional<double>& origin) {
    Scenario s = load_scenario_file(path);
    if (origin) s = rotate_origin(s, *origin);
    return s;
}

Scenario without_delay(Scenario s) {
    for (ApplianceSpec& app : s.appliances) app.adt_hours = 0.0;
    return s;
}

std::vector<Run> plan(const Scenario& base, const std::string& case_selector, const std::string& dsm) {
    const std::vector<bool> settings = dsm_settings(dsm);
    std::vector<CaseId> cases;
    if (case_selector == "all") {
        cases.assign(kAllCases.begin(), kAllCases.end());
    } else if (!case_selector.empty()) {
        try {
            cases.push_back(parse_case(case_selector));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    std::vector<Run> runs;
    if (cases.empty()) {
        for (bool on : settings) runs.push_back(Run{"scenario", on, on ? base : without_delay(base)});
    }
    for (CaseId id : cases) {
        for (bool on : settings) runs.push_back(Run{std::string(to_string(id)), on, synth_case(id, on, base)});
    }
    return runs;
}

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string family_list(const std::vector<Family>& families) {
    std::string out;
    for (Family f : families) out += (out.empty() ? "" : ", ") + std::string(to_string(f));
    return out;
}

Outcome solve_run(const Run& run, const RunConfig& config, bool full_artifacts) {
    const auto start = std::chrono::steady_clock::now();
    const Formulation f = build_model(run.scenario);
    const milp::Solution sol = milp::solve_milp(f.model, config.solver);
    Outcome o;
    o.status = sol.status;
    o.nodes = sol.nodes_explored;
    o.lp_iterations = sol.lp_iterations;
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::filesystem::path& dir = config.output_dir;
    if (config.dump_lp) write_file(dir / ("model_" + run.tag() + ".lp"), milp::to_lp_string(f.model));
    if (sol.optimal()) {
        const Schedule sc = extract_schedule(run.scenario, f.vars, sol);
        o.cost = compute_cost(sc, run.scenario.tariff, run.scenario.penalties, run.scenario.dt());
        o.exported_kwh = exported_energy(sc, run.scenario.dt());
        std::ostringstream csv;
        write_schedule_csv(csv, sc);
        write_file(dir / ("schedule_" + run.tag() + ".csv"), csv.str());
        if (full_artifacts) {
            nlohmann::ordered_json cost;
            cost["case"] = run.case_name;
            cost["dsm"] = run.dsm;
            cost["bill_cents"] = o.cost.bill;
            cost["penalty_cents"] = o.cost.penalty;
            cost["objective_cents"] = o.cost.objective;
            cost["solver_objective_cents"] = sol.objective;
            cost["exported_kwh"] = o.exported_kwh;
            write_file(dir / ("cost_" + run.tag() + ".json"), cost.dump(2) + "\n");
        }
    } else if (sol.status == milp::SolveStatus::kInfeasible) {
        o.culprits = diagnose_infeasibility(run.scenario, config.solver);
    }
    if (full_artifacts) {
        nlohmann::ordered_json stats;
        stats["status"] = milp::to_string(sol.status);
        stats["variables"] = f.model.num_variables();
        stats["binaries"] = f.model.num_binaries();
        stats["rows"] = f.model.num_constraints();
        stats["nodes_explored"] = sol.nodes_explored;
        stats["lp_iterations"] = sol.lp_iterations;
        stats["wall_seconds"] = o.seconds;
        write_file(dir / ("stats_" + run.tag() + ".json"), stats.dump(2) + "\n");
        write_file(dir / ("scenario_" + run.tag() + ".json"), serialize_scenario(run.scenario));
    }
    return o;
}

void report_failure(const Run& run, const Outcome& o, std::ostream& err) {
    err << "error: " << run.tag() << ": " << milp::to_string(o.status);
    if (o.status == milp::SolveStatus::kInfeasible) {
        err << (o.culprits.empty() ? " (no single constraint family is responsible)"
                                   : "; constraint families at fault: " + family_list(o.culprits));
    }
    err << '\n';
}

// Runs `body`, mapping input problems to exit code 2.
template <typename Body>
int guarded(std::ostream& err, Body body) {
    try {
        return body();
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario base = load_base(config.scenario, config.origin_hour);
        const std::vector<Run> runs = plan(base, config.case_selector, config.dsm);
        std::filesystem::create_directories(config.output_dir);
        int code = kExitOk;
        for (const Run& run : runs) {
            const Outcome o = solve_run(run, config, true);
            if (o.status != milp::SolveStatus::kOptimal) {
                report_failure(run, o, err);
                code = kExitFail;
                continue;
            }
            out << run.tag() << ": bill " << fixed(o.cost.bill) << " c, penalty " << fixed(o.cost.penalty)
                << " c, objective " << fixed(o.cost.objective) << " c, exported " << fixed(o.exported_kwh)
                << " kWh, nodes " << o.nodes << '\n';
        }
        return code;
    });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario base = load_base(config.scenario, config.origin_hour);
        const std::string selector = config.case_selector.empty() ? "all" : config.case_selector;
        const std::vector<Run> runs = plan(base, selector, config.dsm);
        std::filesystem::create_directories(config.output_dir);
        std::string summary = "case,dsm,status,bill_cents,penalty_cents,objective_cents,exported_kwh,nodes,lp_iterations\n";
        std::string timing = "case,dsm,wall_seconds\n";
        int code = kExitOk;
        for (const Run& run : runs) {
            Outcome o;
            try {
                o = solve_run(run, config, false);
            } catch (const std::exception& e) {
                err << "error: " << run.tag() << ": " << e.what() << '\n';
                code = kExitFail;
                continue;
            }
            if (o.status != milp::SolveStatus::kOptimal) {
                report_failure(run, o, err);
                code = kExitFail;
            }
            const bool ok = o.status == milp::SolveStatus::kOptimal;
            const std::string dsm = run.dsm ? "on" : "off";
            summary += run.case_name + "," + dsm + "," + std::string(milp::to_string(o.status)) + "," +
                       (ok ? fixed(o.cost.bill) : "") + "," + (ok ? fixed(o.cost.penalty) : "") + "," +
                       (ok ? fixed(o.cost.objective) : "") + "," + (ok ? fixed(o.exported_kwh) : "") + "," +
                       std::to_string(o.nodes) + "," + std::to_string(o.lp_iterations) + "\n";
            timing += run.case_name + "," + dsm + "," + fixed(o.seconds) + "\n";
        }
        write_file(config.output_dir / "summary.csv", summary);
        write_file(config.output_dir / "timing.csv", timing);
        out << summary;
        return code;
    });
}

int cmd_validate(const ValidateConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Scenario s = load_base(config.scenario, config.origin_hour);
        const std::vector<bool> settings = dsm_settings(config.dsm);
        if (settings.size() != 1) throw UsageError("validate takes --dsm on or off");
        if (!config.case_selector.empty()) {
            if (config.case_selector == "all") throw UsageError("validate takes a single case");
            s = plan(s, config.case_selector, config.dsm).front().scenario;
        } else if (!settings.front()) {
            s = without_delay(s);
        }
        const Schedule sc = read_schedule_csv_file(config.schedule);
        const AuditReport report = audit(s, sc);
        if (config.report) write_file(*config.report, to_json(report));
        for (const FamilyResult& f : report.families) {
            out << to_string(f.family) << ": " << (f.pass ? "pass" : "FAIL") << " (" << f.rows_checked
                << " rows, worst violation " << f.worst_violation;
            if (!f.pass) out << " at " << f.worst_location;
            out << ")\n";
        }
        out << (report.pass() ? "schedule passes every constraint family\n"
                              : "schedule violates: " + family_list(report.failing()) + "\n");
        return report.pass() ? kExitOk : kExitFail;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Day-ahead household energy scheduler", "hems"};
    app.require_subcommand(1);

    RunConfig run_config;
    ValidateConfig validate_config;
    std::optional<double> origin;

    auto add_run_options = [&](CLI::App* sub, const std::string& dsm_help) {
        sub->add_option("--scenario", run_config.scenario, "Scenario document (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--case", run_config.case_selector, "Case A, B, C, D or all")
                ->check(CLI::IsMember({"A", "B", "C", "D", "a", "b", "c", "d", "all"}));
        sub->add_option("--dsm", run_config.dsm, dsm_help)->check(CLI::IsMember({"on", "off", "both"}));
        sub->add_option("--out", run_config.output_dir, "Output directory")->capture_default_str();
        sub->add_option("--node-limit", run_config.solver.node_limit, "Branch-and-bound node limit")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
        sub->add_option("--gap-tol", run_config.solver.gap_tol, "Absolute optimality gap")
                ->check(CLI::Range(0.0, 1.0))
                ->capture_default_str();
        sub->add_option("--integrality-tol", run_config.solver.integrality_tol, "Integrality tolerance")
                ->check(CLI::Range(1e-12, 0.1))
                ->capture_default_str();
        sub->add_option("--lp-iteration-limit", run_config.solver.lp.iteration_limit, "Simplex iteration cap per LP")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
        sub->add_option("--origin-hour", origin, "Clock hour at which the horizon starts")->check(CLI::Range(0.0, 24.0));
        sub->add_flag("--dump-lp", run_config.dump_lp, "Write each model in LP text format");
    };

    CLI::App* solve = app.add_subcommand("solve", "Solve one scenario, or synthesized cases");
    add_run_options(solve, "Load shifting: on (default), off or both");
    CLI::App* sweep = app.add_subcommand("sweep", "Solve cases A-D with and without load shifting");
    add_run_options(sweep, "Load shifting: on, off or both (default)");

    CLI::App* validate = app.add_subcommand("validate", "Audit a schedule against a scenario");
    validate->add_option("--scenario", validate_config.scenario, "Scenario document (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
    validate->add_option("--schedule", validate_config.schedule, "Schedule CSV")->required()->check(CLI::ExistingFile);
    validate->add_option("--case", validate_config.case_selector, "Case the schedule was solved for")
            ->check(CLI::IsMember({"A", "B", "C", "D", "a", "b", "c", "d"}));
    validate->add_option("--dsm", validate_config.dsm, "on or off")->check(CLI::IsMember({"on", "off"}));
    validate->add_option("--origin-hour", origin, "Clock hour at which the horizon starts")->check(CLI::Range(0.0, 24.0));
    validate->add_option("--report", validate_config.report, "Write the audit report (JSON) here");

    // CLI11 takes the arguments reversed and without the program name.
    std::vector<std::string> argv(args.rbegin(), args.rend());
    if (!argv.empty()) argv.pop_back();
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (*sweep && sweep->count("--dsm") == 0) run_config.dsm = "both";
    run_config.origin_hour = origin;
    validate_config.origin_hour = origin;
    if (*solve) return cmd_solve(run_config, out, err);
    if (*sweep) return cmd_sweep(run_config, out, err);
    return cmd_validate(validate_config, out, err);
}

}  // namespace hems::cli
