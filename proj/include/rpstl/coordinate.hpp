#pragma once

#include "rpstl/bnb.hpp"
#include "rpstl/encode.hpp"
#include "rpstl/generators.hpp"
#include "rpstl/monitor.hpp"
#include "rpstl/plan.hpp"

namespace rpstl {

/// A produced plan refuted by the exact monitor: an encoder defect, fatal by
/// design.
struct CertificationError : std::logic_error {
    using std::logic_error::logic_error;
};

struct RobotSpec {
    Vec2 start;
    double radius = 0.25;
    double v_max = 1.0;
    std::vector<Vec2> goals;  // one per alternative, or a single goal
    int alternatives = 1;     // used with a single goal
    double penalty = 1.0;     // cell-cost diversification penalty
};

struct OccupancySpec {
    std::string region;
    int cap = 1;
};

struct SpecSection {
    std::vector<std::string> clauses;  // RP-STL text, may use @ placeholders
    bool auto_interference = true;
    bool relaxed = false;
    std::vector<OccupancySpec> occupancy;
};

struct Scenario {
    std::string name = "scenario";
    Workspace workspace{1, 1, 1.0};
    std::vector<RobotSpec> robots;
    SpecSection spec;
    EncodeConfig encode;       // encode.segment_count <= 0 derives a default
    double section_resolution = 0.0;  // 0 = cell_size / 2
};

enum class PipelineStatus { Ok, PlanningFailed, Infeasible, TimeLimit };

struct CertificationRecord {
    bool exact_ok = false;
    bool ball_ok = false;
    int profiles_checked = 0;
};

struct CoordinationPlan {
    std::vector<int> selection;
    TsjpSequence tsjp;
    double objective = 0.0;
    std::vector<double> travel_times;
    CertificationRecord certification;
};

struct PipelineOptions {
    double time_limit = 300.0;
    int workers = 1;
    std::uint64_t seed = 20240001;
    int ball_random_profiles = 100;
    int ball_corner_budget = 64;
};

struct PipelineResult {
    PipelineStatus status = PipelineStatus::Ok;
    std::string message;

    std::vector<Robot> robots;  // with planned paths
    std::vector<CriticalSection> sections;
    std::vector<FormulaPtr> user_clauses;
    FormulaPtr formula;      // conjunction of user clauses and generated ones
    FormulaPtr formula_nnf;
    EncodeConfig encode_used;
    MilpModel model;
    EliminateStats elim_stats;
    Solution solution;
    CoordinationPlan plan;  // meaningful when status == Ok

    double plan_seconds = 0.0;
    double sections_seconds = 0.0;
    double encode_seconds = 0.0;
    double solve_seconds = 0.0;
};

/// Replace @T, @g(i,j), @lo(i,j,region), @hi(i,j,region) in a clause with
/// numbers computed from the planned paths. Indices are one-based.
std::string expand_placeholders(const std::string& text, const std::vector<Robot>& robots,
                                const Workspace& ws, double horizon, double resolution);

/// Plan paths only (the `plan` pipeline stage).
std::vector<Robot> plan_robots(const Scenario& scenario);

/// Critical sections across all robot pairs and path combinations.
std::vector<CriticalSection> compute_sections(const Scenario& scenario,
                                              const std::vector<Robot>& robots);

/// Full pipeline: plan, sections, formula assembly, encode, solve, certify.
PipelineResult solve_scenario(const Scenario& scenario, const PipelineOptions& opts = {});

/// First stamp time at which each robot's progress reaches its selected goal
/// length (within 1e-6).
std::vector<double> travel_times(const TsjpSequence& tsjp, const std::vector<int>& selection,
                                 const std::vector<Robot>& robots);

}  // namespace rpstl
