#include "rpstl/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rpstl {

using nlohmann::json;

namespace {

Vec2 to_vec(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("scenario: expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<std::string> read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("scenario: cannot open map file " + path);
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    return rows;
}

}  // namespace

Scenario load_scenario_text(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("scenario: JSON parse error: ") + e.what());
    }
    Scenario s;
    s.name = j.value("name", "scenario");

    if (!j.contains("workspace")) throw Error("scenario: missing 'workspace'");
    const json& jw = j["workspace"];
    double cell = jw.value("cell_size", 0.5);
    std::vector<std::string> rows;
    if (jw.contains("grid"))
        rows = jw["grid"].get<std::vector<std::string>>();
    else if (jw.contains("map_file"))
        rows = read_map_file(base_dir + "/" + jw["map_file"].get<std::string>());
    else
        throw Error("scenario: workspace needs 'grid' or 'map_file'");
    s.workspace = Workspace::from_text(rows, cell);
    if (jw.contains("regions")) {
        for (auto& [name, jr] : jw["regions"].items()) {
            if (!jr.contains("x") || !jr.contains("y"))
                throw Error("scenario: region " + name + " needs 'x' and 'y' spans");
            Rect r{jr["x"][0].get<double>(), jr["x"][1].get<double>(), jr["y"][0].get<double>(),
                   jr["y"][1].get<double>()};
            s.workspace.add_region(name, r);
        }
    }

    if (!j.contains("robots") || !j["robots"].is_array() || j["robots"].empty())
        throw Error("scenario: missing 'robots'");
    for (const json& jr : j["robots"]) {
        RobotSpec r;
        r.start = to_vec(jr.at("start"));
        r.radius = jr.value("radius", 0.25);
        r.v_max = jr.value("v_max", 1.0);
        if (jr.contains("goals"))
            for (const json& g : jr["goals"]) r.goals.push_back(to_vec(g));
        else if (jr.contains("goal"))
            r.goals.push_back(to_vec(jr["goal"]));
        else
            throw Error("scenario: robot needs 'goal' or 'goals'");
        r.alternatives = jr.value("alternatives", static_cast<int>(r.goals.size()));
        r.penalty = jr.value("penalty", 1.0);
        s.robots.push_back(std::move(r));
    }

    if (j.contains("spec")) {
        const json& js = j["spec"];
        if (js.contains("clauses"))
            s.spec.clauses = js["clauses"].get<std::vector<std::string>>();
        s.spec.auto_interference = js.value("auto_interference", true);
        s.spec.relaxed = js.value("relaxed", false);
        if (js.contains("occupancy")) {
            for (const json& jo : js["occupancy"])
                s.spec.occupancy.push_back(
                    {jo.at("region").get<std::string>(), jo.at("cap").get<int>()});
        }
    }

    if (!j.contains("encode")) throw Error("scenario: missing 'encode'");
    const json& je = j["encode"];
    s.encode.segment_count = je.value("K", 0);
    s.encode.horizon = je.at("T").get<double>();
    s.encode.progress_margin = je.value("eps", 0.1);
    s.encode.time_margin = je.value("eps_t", 0.1);
    s.encode.big_m = je.value("bigM", 0.0);
    std::string obj = je.value("objective", "makespan");
    if (obj == "makespan")
        s.encode.objective = ObjectiveKind::Makespan;
    else if (obj == "stt" || obj == "sum_travel_time")
        s.encode.objective = ObjectiveKind::SumTravelTime;
    else
        throw Error("scenario: unknown objective '" + obj + "'");
    s.section_resolution = j.value("section_resolution", 0.0);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    size_t slash = path.find_last_of('/');
    std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return load_scenario_text(ss.str(), dir);
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    json jw;
    jw["cell_size"] = s.workspace.cell_size();
    std::vector<std::string> rows;
    for (int cy = 0; cy < s.workspace.height(); ++cy) {
        std::string row;
        for (int cx = 0; cx < s.workspace.width(); ++cx)
            row += s.workspace.occupied(cx, cy) ? '#' : '.';
        rows.push_back(row);
    }
    jw["grid"] = rows;
    json jregions = json::object();
    for (const auto& [name, r] : s.workspace.regions())
        jregions[name] = {{"x", {r.x_min, r.x_max}}, {"y", {r.y_min, r.y_max}}};
    jw["regions"] = jregions;
    j["workspace"] = jw;

    json jrobots = json::array();
    for (const RobotSpec& r : s.robots) {
        json jr;
        jr["start"] = {r.start.x, r.start.y};
        jr["radius"] = r.radius;
        jr["v_max"] = r.v_max;
        json goals = json::array();
        for (const Vec2& g : r.goals) goals.push_back({g.x, g.y});
        jr["goals"] = goals;
        jr["alternatives"] = r.alternatives;
        jr["penalty"] = r.penalty;
        jrobots.push_back(jr);
    }
    j["robots"] = jrobots;

    json js;
    js["clauses"] = s.spec.clauses;
    js["auto_interference"] = s.spec.auto_interference;
    js["relaxed"] = s.spec.relaxed;
    json jocc = json::array();
    for (const OccupancySpec& o : s.spec.occupancy)
        jocc.push_back({{"region", o.region}, {"cap", o.cap}});
    js["occupancy"] = jocc;
    j["spec"] = js;

    json je;
    je["K"] = s.encode.segment_count;
    je["T"] = s.encode.horizon;
    je["eps"] = s.encode.progress_margin;
    je["eps_t"] = s.encode.time_margin;
    if (s.encode.big_m > 0.0) je["bigM"] = s.encode.big_m;
    je["objective"] = s.encode.objective == ObjectiveKind::Makespan ? "makespan" : "stt";
    j["encode"] = je;
    if (s.section_resolution > 0.0) j["section_resolution"] = s.section_resolution;
    return j.dump(2) + "\n";
}

}  // namespace rpstl
