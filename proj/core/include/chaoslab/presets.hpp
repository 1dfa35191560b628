#pragma once

// Ready-made experiments, one per standard plot. Realization counts default
// to a desk-scale ensemble; `full` uses the large reference ensembles.

#include <string>
#include <vector>

#include "chaoslab/config.hpp"

namespace chaoslab {

struct PresetInfo {
    std::string name;
    std::string summary;
};

const std::vector<PresetInfo>& preset_catalog();

// Throws ArgumentError for an unknown name.
ExperimentConfig preset(const std::string& name, bool full = false);

}  // namespace chaoslab
