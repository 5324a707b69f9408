#pragma once

#include <string>
#include <vector>

#include "anderson/ensemble.hpp"

namespace anderson {

/// On-disk run description (JSON document with sections `lattice`, `input`,
/// `evolution`, `ensemble`, `output`). Unknown keys are rejected.
struct RunConfig {
    EnsembleConfig ensemble;
    std::string output_directory;            // may be empty (use --out)
    std::vector<std::string> output_formats{"csv"};
};

/// Parses and validates a config document. Throws ConfigError with the
/// offending key path in the message.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Canonical JSON serialization; parse_run_config(serialize_run_config(c))
/// reproduces an identical config.
std::string serialize_run_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);
bool operator==(const EnsembleConfig& a, const EnsembleConfig& b);
bool operator==(const LatticeSpec& a, const LatticeSpec& b);
bool operator==(const TwoParticleInput& a, const TwoParticleInput& b);
bool operator==(const SingleParticleSource& a, const SingleParticleSource& b);

}  // namespace anderson
