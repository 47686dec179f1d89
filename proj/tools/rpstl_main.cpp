#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rpstl/bundle.hpp"
#include "rpstl/parser.hpp"
#include "rpstl/scenario_io.hpp"
#include "rpstl/simulate.hpp"

using namespace rpstl;

namespace {

struct CommonFlags {
    std::string out = "out";
    double time_limit = 300.0;
    int workers = 1;
    std::uint64_t seed = 20240001;
};

void add_common(CLI::App* cmd, std::string& scenario_path, CommonFlags& flags) {
    cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", flags.out, "result bundle directory");
    cmd->add_option("--time-limit", flags.time_limit, "solver wall-clock limit in seconds");
    cmd->add_option("--workers", flags.workers, "branch-and-bound workers (1 = deterministic)");
    cmd->add_option("--seed", flags.seed, "seed for the certification sampler");
}

PipelineOptions to_opts(const CommonFlags& flags) {
    PipelineOptions opts;
    opts.time_limit = flags.time_limit;
    opts.workers = flags.workers;
    opts.seed = flags.seed;
    return opts;
}

StallWindow parse_stall(const std::string& text) {
    // robot=R,from=T,for=D
    StallWindow w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t eq = item.find('=');
        if (eq == std::string::npos) throw Error("bad --stall item: " + item);
        std::string key = item.substr(0, eq);
        double value = std::stod(item.substr(eq + 1));
        if (key == "robot")
            w.robot = static_cast<int>(value) - 1;
        else if (key == "from")
            w.from = value;
        else if (key == "for")
            w.duration = value;
        else
            throw Error("bad --stall key: " + key);
    }
    return w;
}

int report_and_bundle(const Scenario& scenario, const PipelineResult& result,
                      const CommonFlags& flags) {
    bundle::write_solution_bundle(flags.out, scenario, result);
    {
        std::ofstream lp(flags.out + "/model.lp");
        export_lp(result.model, lp);
    }
    if (result.status != PipelineStatus::Ok) {
        std::cerr << "solve: " << result.message << "\n";
        return 1;
    }
    std::printf("objective %.6f\n", result.plan.objective);
    std::printf("binaries %d constraints %zu\n", result.model.binary_count(),
                result.model.rows.size());
    std::printf("nodes %ld lp_pivots %ld solve_seconds %.3f\n", result.solution.stats.nodes,
                result.solution.stats.lp_pivots, result.solve_seconds);
    std::printf("certified: exact + %d sampled profiles\n",
                result.plan.certification.profiles_checked);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "reference-path STL coordination: plan paths, compute critical sections, solve the "
        "allocation/scheduling MILP, simulate tracking, and check plans"};
    app.require_subcommand(1);

    std::string scenario_path;
    CommonFlags flags;

    auto* cmd_plan = app.add_subcommand("plan", "plan reference paths only");
    add_common(cmd_plan, scenario_path, flags);

    auto* cmd_sections = app.add_subcommand("sections", "compute critical sections");
    add_common(cmd_sections, scenario_path, flags);

    auto* cmd_solve = app.add_subcommand("solve", "full pipeline with certification");
    add_common(cmd_solve, scenario_path, flags);
    std::string objective_override;
    cmd_solve->add_option("--objective", objective_override, "makespan | stt");

    auto* cmd_emit = app.add_subcommand("emit-lp", "encode and write model.lp without solving");
    add_common(cmd_emit, scenario_path, flags);

    auto* cmd_sim = app.add_subcommand("simulate", "solve then track with local controllers");
    add_common(cmd_sim, scenario_path, flags);
    std::vector<std::string> stall_args;
    double sim_dt = 0.0;
    cmd_sim->add_option("--stall", stall_args, "robot=R,from=T,for=D (repeatable)");
    cmd_sim->add_option("--dt", sim_dt, "simulation step (default eps / (2 vmax))");

    auto* cmd_check = app.add_subcommand("check", "re-check a plan bundle with the monitor");
    add_common(cmd_check, scenario_path, flags);
    std::string bundle_dir;
    cmd_check->add_option("--bundle", bundle_dir, "bundle directory to check")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_plan->parsed()) {
            Scenario scenario = load_scenario_file(scenario_path);
            std::vector<Robot> robots = plan_robots(scenario);
            bundle::ensure_dir(flags.out + "/plot");
            bundle::write_text(flags.out + "/paths.json", bundle::paths_json(robots));
            bundle::write_text(flags.out + "/plot/paths.csv", bundle::plot_paths_csv(robots));
            for (const Robot& r : robots)
                std::printf("robot %d: %zu path(s), first g = %.3f\n", r.id + 1, r.paths.size(),
                            r.paths.front().g());
            return 0;
        }
        if (cmd_sections->parsed()) {
            Scenario scenario = load_scenario_file(scenario_path);
            std::vector<Robot> robots = plan_robots(scenario);
            auto sections = compute_sections(scenario, robots);
            bundle::ensure_dir(flags.out);
            bundle::write_text(flags.out + "/paths.json", bundle::paths_json(robots));
            bundle::write_text(flags.out + "/sections.json", bundle::sections_json(sections));
            std::printf("%zu critical section(s)\n", sections.size());
            return 0;
        }
        if (cmd_solve->parsed()) {
            Scenario scenario = load_scenario_file(scenario_path);
            if (objective_override == "stt")
                scenario.encode.objective = ObjectiveKind::SumTravelTime;
            else if (objective_override == "makespan")
                scenario.encode.objective = ObjectiveKind::Makespan;
            else if (!objective_override.empty())
                throw Error("unknown --objective " + objective_override);
            PipelineResult result = solve_scenario(scenario, to_opts(flags));
            return report_and_bundle(scenario, result, flags);
        }
        if (cmd_emit->parsed()) {
            Scenario scenario = load_scenario_file(scenario_path);
            PipelineOptions opts = to_opts(flags);
            opts.time_limit = 0.0;  // encode only: the solver gives up immediately
            PipelineResult result = solve_scenario(scenario, opts);
            bundle::ensure_dir(flags.out);
            std::ofstream lp(flags.out + "/model.lp");
            export_lp(result.model, lp);
            std::printf("wrote %s/model.lp: %d binaries, %zu constraints\n", flags.out.c_str(),
                        result.model.binary_count(), result.model.rows.size());
            return 0;
        }
        if (cmd_sim->parsed()) {
            Scenario scenario = load_scenario_file(scenario_path);
            PipelineResult result = solve_scenario(scenario, to_opts(flags));
            int rc = report_and_bundle(scenario, result, flags);
            if (rc != 0) return rc;
            std::vector<StallWindow> stalls;
            for (const std::string& s : stall_args) stalls.push_back(parse_stall(s));
            double vmax = 0.0;
            for (const Robot& r : result.robots) vmax = std::max(vmax, r.v_max);
            double dt =
                sim_dt > 0.0 ? sim_dt : scenario.encode.progress_margin / (2.0 * vmax);
            ExecutionTrace trace =
                execute(result.plan.tsjp, result.plan.selection, result.robots, dt,
                        scenario.encode.progress_margin, stalls_to_disturbance(stalls));
            bundle::write_text(flags.out + "/trace.csv", bundle::trace_csv(trace));
            bundle::write_text(flags.out + "/anomalies.csv", bundle::anomalies_csv(trace));
            JointProfile prof = trace.to_profile(result.plan.selection);
            bool sat = satisfies(prof, result.formula, 0.0);
            std::printf("trace ticks %zu anomalies %zu monitor %s\n", trace.times.size(),
                        trace.anomalies.size(), sat ? "SAT" : "UNSAT");
            return trace.anomalies.empty() && sat ? 0 : 2;
        }
        if (cmd_check->parsed()) {
            Scenario scenario = load_scenario_file(scenario_path);
            std::ifstream pj(bundle_dir + "/plan.json");
            std::ifstream pp(bundle_dir + "/paths.json");
            std::ifstream ft(bundle_dir + "/formula.txt");
            if (!pj || !pp || !ft)
                throw Error("check: bundle needs plan.json, paths.json, formula.txt");
            std::stringstream pjs, pps, fts;
            pjs << pj.rdbuf();
            pps << pp.rdbuf();
            fts << ft.rdbuf();
            std::vector<Robot> robots = bundle::load_paths_json(pps.str(), scenario);
            CoordinationPlan plan;
            bundle::load_plan_json(pjs.str(), plan);
            std::vector<int> path_counts;
            for (const Robot& r : robots) path_counts.push_back(static_cast<int>(r.paths.size()));
            FormulaPtr formula = parse(fts.str(), path_counts);

            JointProfile prof = plan.tsjp.interpolate(plan.selection);
            if (satisfies(prof, formula, 0.0)) {
                std::printf("SAT\n");
                return 0;
            }
            auto why = explain_violation(prof, formula, 0.0);
            std::printf("UNSAT %s at t=%.4f\n", why ? why->node_path.c_str() : "?",
                        why ? why->time : 0.0);
            return 1;
        }
    } catch (const CertificationError& e) {
        std::cerr << "FATAL certification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
