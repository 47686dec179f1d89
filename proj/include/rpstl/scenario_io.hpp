#pragma once

#include "rpstl/coordinate.hpp"

namespace rpstl {

/// Load a scenario from its JSON text. `base_dir` resolves a workspace
/// "map_file" reference.
Scenario load_scenario_text(const std::string& json_text, const std::string& base_dir = ".");
Scenario load_scenario_file(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);

}  // namespace rpstl
