#pragma once

#include "rpstl/coordinate.hpp"
#include "rpstl/simulate.hpp"

namespace rpstl {

/// Writers for the result-bundle files. Content is deterministic for a
/// given pipeline result; wall-clock timings go only into stats.json.
namespace bundle {

void ensure_dir(const std::string& dir);
void write_text(const std::string& path, const std::string& content);

std::string paths_json(const std::vector<Robot>& robots);
std::vector<Robot> load_paths_json(const std::string& text, const Scenario& scenario);
std::string sections_json(const std::vector<CriticalSection>& sections);
std::string formula_text(const PipelineResult& result);
std::string plan_json(const PipelineResult& result);
void load_plan_json(const std::string& text, CoordinationPlan& plan);
std::string certification_text(const PipelineResult& result);
std::string stats_json(const PipelineResult& result);
std::string trace_csv(const ExecutionTrace& trace);
std::string anomalies_csv(const ExecutionTrace& trace);
std::string plot_paths_csv(const std::vector<Robot>& robots);
std::string plot_tsjp_csv(const CoordinationPlan& plan);

/// Write the full bundle for a solved scenario into `dir`.
void write_solution_bundle(const std::string& dir, const Scenario& scenario,
                           const PipelineResult& result);

}  // namespace bundle

}  // namespace rpstl
