#pragma once

#include <string>

#include "fdalloc/quality.hpp"
#include "fdalloc/scenario.hpp"

namespace fdalloc {

/// Loads a SystemSpec from a JSON config file. Per-pair quality models come
/// either from named video presets ("video_1"/"video_2" with "q_min_*") or
/// explicit coefficients ("a_1"/"b_1"/...).
SystemSpec load_system_spec(const std::string& path, const VideoPresets& presets);

/// Loads a scenario definition: {"name", "system", "sweep": {"path",
/// "values"}, "methods": [...]}.
Scenario load_scenario(const std::string& path, const VideoPresets& presets);

}  // namespace fdalloc
