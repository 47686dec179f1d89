#include "rpstl/coordinate.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "rpstl/parser.hpp"

namespace rpstl {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string expand_placeholders(const std::string& text, const std::vector<Robot>& robots,
                                const Workspace& ws, double horizon, double resolution) {
    std::string out;
    size_t pos = 0;
    auto intervals_for = [&](int robot, int path, const std::string& region) {
        const Robot& r = robots.at(robot);
        auto ivs = region_interval(r.paths.at(path), ws.region(region), r.footprint_radius,
                                   resolution);
        if (ivs.empty())
            throw Error("placeholder: path " + std::to_string(path + 1) + " of robot " +
                        std::to_string(robot + 1) + " never touches region " + region);
        return ivs;
    };
    while (pos < text.size()) {
        if (text[pos] != '@') {
            out += text[pos++];
            continue;
        }
        size_t name_end = pos + 1;
        while (name_end < text.size() && std::isalpha(static_cast<unsigned char>(text[name_end])))
            ++name_end;
        std::string key = text.substr(pos + 1, name_end - pos - 1);
        if (key == "T") {
            out += fmt(horizon);
            pos = name_end;
            continue;
        }
        if (key != "g" && key != "lo" && key != "hi")
            throw Error("placeholder: unknown key @" + key);
        size_t close = text.find(')', name_end);
        if (name_end >= text.size() || text[name_end] != '(' || close == std::string::npos)
            throw Error("placeholder: @" + key + " needs (..) arguments");
        std::string args = text.substr(name_end + 1, close - name_end - 1);
        std::vector<std::string> parts;
        size_t a = 0;
        while (a <= args.size()) {
            size_t comma = args.find(',', a);
            if (comma == std::string::npos) comma = args.size();
            std::string piece = args.substr(a, comma - a);
            size_t b = piece.find_first_not_of(" \t");
            size_t e = piece.find_last_not_of(" \t");
            parts.push_back(b == std::string::npos ? "" : piece.substr(b, e - b + 1));
            a = comma + 1;
        }
        int robot = std::stoi(parts.at(0)) - 1;
        int path = std::stoi(parts.at(1)) - 1;
        if (key == "g") {
            out += fmt(robots.at(robot).paths.at(path).g());
        } else {
            auto ivs = intervals_for(robot, path, parts.at(2));
            out += fmt(key == "lo" ? ivs.front().first : ivs.back().second);
        }
        pos = close + 1;
    }
    return out;
}

std::vector<Robot> plan_robots(const Scenario& scenario) {
    std::vector<Robot> robots;
    for (size_t i = 0; i < scenario.robots.size(); ++i) {
        const RobotSpec& spec = scenario.robots[i];
        if (spec.goals.empty()) throw Error("robot " + std::to_string(i + 1) + ": no goals");
        Robot r;
        r.id = static_cast<int>(i);
        r.start = spec.start;
        r.footprint_radius = spec.radius;
        r.v_max = spec.v_max;
        auto [sx, sy] = scenario.workspace.cell_of(spec.start);
        if (spec.goals.size() > 1) {
            for (const Vec2& goal : spec.goals) {
                auto [gx, gy] = scenario.workspace.cell_of(goal);
                InflatedGrid grid(scenario.workspace, spec.radius);
                auto cells = grid_search(grid, {sx, sy}, {gx, gy}, 1.0);
                r.paths.push_back(cells_to_path(scenario.workspace, cells, spec.start, goal));
            }
        } else {
            const Vec2& goal = spec.goals.front();
            auto [gx, gy] = scenario.workspace.cell_of(goal);
            InflatedGrid grid(scenario.workspace, spec.radius);
            std::vector<double> mult(
                static_cast<size_t>(scenario.workspace.width()) * scenario.workspace.height(),
                1.0);
            std::set<std::vector<std::pair<int, int>>> seen;
            for (int alt = 0; alt < std::max(1, spec.alternatives); ++alt) {
                std::vector<Cell> cells;
                try {
                    cells = grid_search(grid, {sx, sy}, {gx, gy}, 1.0, &mult);
                } catch (const NoPathError&) {
                    if (r.paths.empty()) throw;
                    break;
                }
                std::vector<std::pair<int, int>> key;
                for (const Cell& c : cells) key.emplace_back(c.x, c.y);
                if (seen.insert(key).second)
                    r.paths.push_back(
                        cells_to_path(scenario.workspace, cells, spec.start, goal));
                for (const Cell& c : cells)
                    mult[static_cast<size_t>(c.y) * scenario.workspace.width() + c.x] *=
                        (1.0 + spec.penalty);
            }
        }
        r.validate();
        robots.push_back(std::move(r));
    }
    return robots;
}

std::vector<CriticalSection> compute_sections(const Scenario& scenario,
                                              const std::vector<Robot>& robots) {
    double res = scenario.section_resolution > 0.0 ? scenario.section_resolution
                                                   : scenario.workspace.cell_size() / 2.0;
    std::vector<CriticalSection> out;
    for (size_t i = 0; i < robots.size(); ++i) {
        for (size_t ii = i + 1; ii < robots.size(); ++ii) {
            for (size_t j = 0; j < robots[i].paths.size(); ++j) {
                for (size_t jj = 0; jj < robots[ii].paths.size(); ++jj) {
                    auto found = find_critical_sections(
                        robots[i].paths[j], robots[i].footprint_radius, robots[ii].paths[jj],
                        robots[ii].footprint_radius, res);
                    for (CriticalSection& cs : found) {
                        cs.robot_a = static_cast<int>(i);
                        cs.path_a = static_cast<int>(j);
                        cs.robot_b = static_cast<int>(ii);
                        cs.path_b = static_cast<int>(jj);
                        out.push_back(cs);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<double> travel_times(const TsjpSequence& tsjp, const std::vector<int>& selection,
                                 const std::vector<Robot>& robots) {
    std::vector<double> out;
    for (size_t i = 0; i < robots.size(); ++i) {
        double goal = robots[i].paths.at(selection.at(i)).g();
        double when = tsjp.times.back();
        for (size_t k = 0; k < tsjp.times.size(); ++k) {
            if (tsjp.progress[k][i] >= goal - 1e-6) {
                when = tsjp.times[k];
                break;
            }
        }
        out.push_back(when);
    }
    return out;
}

PipelineResult solve_scenario(const Scenario& scenario, const PipelineOptions& opts) {
    PipelineResult res;
    auto t0 = std::chrono::steady_clock::now();

    try {
        res.robots = plan_robots(scenario);
    } catch (const Error& e) {
        res.status = PipelineStatus::PlanningFailed;
        res.message = e.what();
        return res;
    }
    res.plan_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    res.sections = compute_sections(scenario, res.robots);
    res.sections_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const double horizon = scenario.encode.horizon;
    double res_interval = scenario.section_resolution > 0.0
                              ? scenario.section_resolution
                              : scenario.workspace.cell_size() / 2.0;
    std::vector<int> path_counts;
    for (const Robot& r : res.robots) path_counts.push_back(static_cast<int>(r.paths.size()));

    std::vector<FormulaPtr> clauses;
    int user_temporal_ops = 0;
    for (const std::string& raw : scenario.spec.clauses) {
        std::string text =
            expand_placeholders(raw, res.robots, scenario.workspace, horizon, res_interval);
        FormulaPtr f = parse(text, path_counts);
        res.user_clauses.push_back(f);
        user_temporal_ops += operator_count(f);
        clauses.push_back(f);
    }
    if (scenario.spec.auto_interference) {
        for (const CriticalSection& cs : res.sections)
            clauses.push_back(interference_formula(cs, path_counts[cs.robot_a],
                                                   path_counts[cs.robot_b], horizon,
                                                   scenario.spec.relaxed));
    }
    for (const OccupancySpec& occ : scenario.spec.occupancy) {
        const Rect& region = scenario.workspace.region(occ.region);
        std::vector<OccupancyInterval> intervals;
        for (const Robot& r : res.robots) {
            for (size_t j = 0; j < r.paths.size(); ++j) {
                for (auto [lo, hi] :
                     region_interval(r.paths[j], region, r.footprint_radius, res_interval))
                    intervals.push_back({r.id, static_cast<int>(j), lo, hi});
            }
        }
        clauses.push_back(
            occupancy_counting_formula(intervals, path_counts, occ.cap, horizon));
    }
    res.formula = clauses.empty() ? f_true() : f_and(std::move(clauses));
    res.formula_nnf = nnf(res.formula);

    res.encode_used = scenario.encode;
    if (res.encode_used.segment_count <= 0)
        res.encode_used.segment_count =
            std::max(2, 2 * (static_cast<int>(res.sections.size()) + user_temporal_ops));

    std::vector<RobotDynamics> dyn;
    for (const Robot& r : res.robots) {
        RobotDynamics d;
        d.v_max = r.v_max;
        for (const ReferencePath& p : r.paths) d.path_lengths.push_back(p.g());
        dyn.push_back(std::move(d));
    }
    Encoder encoder(dyn, res.encode_used, res.formula_nnf);
    LccfPtr lccf = encoder.encode_all(res.formula_nnf);
    res.model.name = scenario.name;
    res.model.vars = encoder.pool();
    res.model.objective = encoder.objective();
    eliminate(lccf, encoder.big_m(), res.model, &res.elim_stats);
    res.encode_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    SolveOptions sopts;
    sopts.time_limit = opts.time_limit;
    sopts.workers = opts.workers;
    res.solution = solve(res.model, sopts);
    res.solve_seconds = seconds_since(t0);

    if (res.solution.status == SolveStatus::Infeasible ||
        res.solution.status == SolveStatus::Unbounded) {
        res.status = PipelineStatus::Infeasible;
        res.message =
            "MILP infeasible; consider a larger K (segment count) or a longer horizon";
        return res;
    }
    if (res.solution.x.empty()) {
        res.status = PipelineStatus::TimeLimit;
        res.message = "solver hit the time limit without an incumbent";
        return res;
    }

    CoordinationPlan plan;
    plan.selection = encoder.extract_selection(res.solution.x);
    plan.tsjp = encoder.extract_tsjp(res.solution.x);
    plan.objective = res.solution.objective;
    plan.travel_times = travel_times(plan.tsjp, plan.selection, res.robots);

    JointProfile prof = plan.tsjp.interpolate(plan.selection);
    plan.certification.exact_ok = satisfies(prof, res.formula, 0.0) &&
                                  satisfies(prof, res.formula_nnf, 0.0);
    BallCheckOptions bopts;
    bopts.corner_budget = opts.ball_corner_budget;
    bopts.random_profiles = opts.ball_random_profiles;
    bopts.seed = opts.seed;
    BallCheckResult ball = satisfies_ball(plan.tsjp, plan.selection, res.formula_nnf,
                                          scenario.encode.progress_margin, bopts);
    plan.certification.ball_ok = ball.ok;
    plan.certification.profiles_checked = ball.profiles_checked + 2;
    if (!plan.certification.exact_ok || !plan.certification.ball_ok)
        throw CertificationError(
            "certification failed: the monitor refutes a solver plan (encoder defect) in "
            "scenario " +
            scenario.name);
    res.plan = std::move(plan);
    res.status = PipelineStatus::Ok;
    return res;
}

}  // namespace rpstl
