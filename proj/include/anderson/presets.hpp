#pragma once

#include <string>
#include <vector>

#include "anderson/run_config.hpp"

namespace anderson {

/// One ensemble run feeding one or more figure panels.
struct PresetRun {
    std::string name;      // subdirectory under the preset output dir
    RunConfig config;
};

/// A named figure preset: the runs to execute plus panel descriptions used
/// to emit plot-ready files.
struct Preset {
    std::string name;
    std::string description;
    std::vector<PresetRun> runs;
};

const std::vector<std::string>& preset_names();
const Preset& preset(const std::string& name);  // throws ConfigError if unknown

}  // namespace anderson
