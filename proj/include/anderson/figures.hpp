#pragma once

#include <filesystem>
#include <string>

#include "anderson/ensemble.hpp"

namespace anderson {

/// Executes every run of the named preset (bundles under
/// <out>/<preset>/runs/<run>/) and emits one subdirectory per figure panel
/// with plot-ready data files and a gnuplot script.
void emit_figure(const std::string& preset_name,
                 const std::filesystem::path& out_dir, unsigned workers,
                 const ProgressFn& progress = {});

}  // namespace anderson
