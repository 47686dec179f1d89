#include "rpstl/bundle.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "rpstl/scenario_io.hpp"

namespace rpstl::bundle {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* status_name(PipelineStatus s) {
    switch (s) {
        case PipelineStatus::Ok:
            return "ok";
        case PipelineStatus::PlanningFailed:
            return "planning_failed";
        case PipelineStatus::Infeasible:
            return "infeasible";
        case PipelineStatus::TimeLimit:
            return "time_limit";
    }
    return "?";
}

}  // namespace

void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

std::string paths_json(const std::vector<Robot>& robots) {
    json j = json::array();
    for (const Robot& r : robots) {
        json jr;
        jr["robot"] = r.id + 1;
        json paths = json::array();
        for (const ReferencePath& p : r.paths) {
            json jp;
            json wps = json::array();
            for (const Vec2& w : p.waypoints()) wps.push_back({w.x, w.y});
            jp["waypoints"] = wps;
            jp["g"] = p.g();
            paths.push_back(jp);
        }
        jr["paths"] = paths;
        j.push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::vector<Robot> load_paths_json(const std::string& text, const Scenario& scenario) {
    json j = json::parse(text);
    std::vector<Robot> robots;
    for (const json& jr : j) {
        Robot r;
        r.id = jr.at("robot").get<int>() - 1;
        const RobotSpec& spec = scenario.robots.at(r.id);
        r.start = spec.start;
        r.footprint_radius = spec.radius;
        r.v_max = spec.v_max;
        for (const json& jp : jr.at("paths")) {
            std::vector<Vec2> wps;
            for (const json& w : jp.at("waypoints")) wps.push_back({w[0], w[1]});
            r.paths.emplace_back(std::move(wps));
        }
        robots.push_back(std::move(r));
    }
    return robots;
}

std::string sections_json(const std::vector<CriticalSection>& sections) {
    json j = json::array();
    for (const CriticalSection& s : sections) {
        j.push_back({{"robot_a", s.robot_a + 1},
                     {"path_a", s.path_a + 1},
                     {"robot_b", s.robot_b + 1},
                     {"path_b", s.path_b + 1},
                     {"interval_a", {s.lower_a, s.upper_a}},
                     {"interval_b", {s.lower_b, s.upper_b}},
                     {"relaxed_a", s.relaxed_a},
                     {"relaxed_b", s.relaxed_b}});
    }
    return j.dump(2) + "\n";
}

std::string formula_text(const PipelineResult& result) {
    return print(result.formula) + "\n";
}

std::string plan_json(const PipelineResult& result) {
    json j;
    j["status"] = status_name(result.status);
    if (result.status != PipelineStatus::Ok) {
        j["message"] = result.message;
        return j.dump(2) + "\n";
    }
    const CoordinationPlan& p = result.plan;
    json sel = json::array();
    for (int s : p.selection) sel.push_back(s + 1);
    j["selection"] = sel;
    j["objective"] = p.objective;
    j["times"] = p.tsjp.times;
    j["progress"] = p.tsjp.progress;
    j["travel_times"] = p.travel_times;
    j["binaries"] = result.model.binary_count();
    j["constraints"] = static_cast<int>(result.model.rows.size());
    return j.dump(2) + "\n";
}

void load_plan_json(const std::string& text, CoordinationPlan& plan) {
    json j = json::parse(text);
    if (j.value("status", "") != "ok") throw Error("plan file does not contain a solved plan");
    plan.selection.clear();
    for (int s : j.at("selection").get<std::vector<int>>()) plan.selection.push_back(s - 1);
    plan.objective = j.at("objective").get<double>();
    plan.tsjp.times = j.at("times").get<std::vector<double>>();
    plan.tsjp.progress = j.at("progress").get<std::vector<std::vector<double>>>();
    if (j.contains("travel_times"))
        plan.travel_times = j.at("travel_times").get<std::vector<double>>();
}

std::string certification_text(const PipelineResult& result) {
    std::string out;
    out += "status: " + std::string(status_name(result.status)) + "\n";
    if (result.status != PipelineStatus::Ok) {
        out += "message: " + result.message + "\n";
        return out;
    }
    out += "exact_monitor: " + std::string(result.plan.certification.exact_ok ? "sat" : "UNSAT") +
           "\n";
    out += "ball_samples: " +
           std::string(result.plan.certification.ball_ok ? "sat" : "UNSAT") + "\n";
    out += "profiles_checked: " + std::to_string(result.plan.certification.profiles_checked) +
           "\n";
    out += "objective: " + fmt(result.plan.objective) + "\n";
    return out;
}

std::string stats_json(const PipelineResult& result) {
    json j;
    j["plan_seconds"] = result.plan_seconds;
    j["sections_seconds"] = result.sections_seconds;
    j["encode_seconds"] = result.encode_seconds;
    j["solve_seconds"] = result.solve_seconds;
    j["nodes"] = result.solution.stats.nodes;
    j["lp_pivots"] = result.solution.stats.lp_pivots;
    j["binaries"] = result.model.binary_count();
    j["constraints"] = static_cast<int>(result.model.rows.size());
    return j.dump(2) + "\n";
}

std::string trace_csv(const ExecutionTrace& trace) {
    std::string out = "time,robot,progress,x,y,segment,deviation_at_stamp\n";
    const size_t n = trace.progress.empty() ? 0 : trace.progress.front().size();
    for (size_t k = 0; k < trace.times.size(); ++k) {
        // a stamp tick carries its recorded deviation, other ticks leave the
        // column empty
        int stamp = -1;
        for (size_t s = 0; s < trace.stamp_times.size(); ++s)
            if (std::abs(trace.times[k] - trace.stamp_times[s]) < 1e-9)
                stamp = static_cast<int>(s);
        for (size_t i = 0; i < n; ++i) {
            out += fmt(trace.times[k]) + "," + std::to_string(i + 1) + "," +
                   fmt(trace.progress[k][i]) + "," + fmt(trace.position[k][i].x) + "," +
                   fmt(trace.position[k][i].y) + "," + std::to_string(trace.segment[k][i]) + ",";
            if (stamp >= 0 && stamp < static_cast<int>(trace.stamp_deviation.size()))
                out += fmt(trace.stamp_deviation[stamp][i]);
            out += "\n";
        }
    }
    return out;
}

std::string anomalies_csv(const ExecutionTrace& trace) {
    std::string out = "robot,stamp,deviation\n";
    for (const AnomalyEvent& a : trace.anomalies)
        out += std::to_string(a.robot + 1) + "," + std::to_string(a.stamp) + "," +
               fmt(a.deviation) + "\n";
    return out;
}

std::string plot_paths_csv(const std::vector<Robot>& robots) {
    std::string out = "robot,path,waypoint,x,y,progress\n";
    for (const Robot& r : robots) {
        for (size_t j = 0; j < r.paths.size(); ++j) {
            const auto& wps = r.paths[j].waypoints();
            const auto& cum = r.paths[j].cumulative_progress();
            for (size_t w = 0; w < wps.size(); ++w)
                out += std::to_string(r.id + 1) + "," + std::to_string(j + 1) + "," +
                       std::to_string(w) + "," + fmt(wps[w].x) + "," + fmt(wps[w].y) + "," +
                       fmt(cum[w]) + "\n";
        }
    }
    return out;
}

std::string plot_tsjp_csv(const CoordinationPlan& plan) {
    std::string out = "stamp,time";
    for (size_t i = 0; i < plan.selection.size(); ++i)
        out += ",sigma_" + std::to_string(i + 1);
    out += "\n";
    for (size_t k = 0; k < plan.tsjp.times.size(); ++k) {
        out += std::to_string(k) + "," + fmt(plan.tsjp.times[k]);
        for (double v : plan.tsjp.progress[k]) out += "," + fmt(v);
        out += "\n";
    }
    return out;
}

void write_solution_bundle(const std::string& dir, const Scenario& scenario,
                           const PipelineResult& result) {
    ensure_dir(dir);
    ensure_dir(dir + "/plot");
    write_text(dir + "/scenario.json", scenario_to_json(scenario));
    write_text(dir + "/paths.json", paths_json(result.robots));
    write_text(dir + "/sections.json", sections_json(result.sections));
    write_text(dir + "/formula.txt", formula_text(result));
    write_text(dir + "/plan.json", plan_json(result));
    write_text(dir + "/certification.txt", certification_text(result));
    write_text(dir + "/stats.json", stats_json(result));
    write_text(dir + "/plot/paths.csv", plot_paths_csv(result.robots));
    if (result.status == PipelineStatus::Ok)
        write_text(dir + "/plot/tsjp.csv", plot_tsjp_csv(result.plan));
}

}  // namespace rpstl::bundle
