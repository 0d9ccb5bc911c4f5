#pragma once

#include <string>
#include <vector>

#include "leray/presets.hpp"
#include "leray/scheme.hpp"

namespace leray {

/// Full run configuration: the scheme config plus run-level settings.
struct RunConfig {
    SchemeConfig scheme;
    PresetKind preset = PresetKind::taylor_green;
    int n_steps = 5;
    std::string out_dir = "out";
    int checkpoint_cadence = 0;  ///< write every k-th step (0: final only)
    std::uint64_t seed = 0;
    double perturb = 0.0;

    static RunConfig defaults();
};

/// Parse an INI-style config file ([section] with key = value lines, '#'
/// comments) over the defaults.  Unknown sections/keys raise config errors.
RunConfig load_config_file(const std::string& path);

/// Apply one "section.key=value" override (CLI wins over file over
/// defaults).
void apply_override(RunConfig& cfg, const std::string& assignment);

}  // namespace leray
