#pragma once

#include <string>
#include <vector>

#include "qrfsim/scenario/config.hpp"

namespace qrfsim::scenario {

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> preset_list();

/// Bundled scenario by name; throws ConfigError for unknown names.
ScenarioConfig preset(const std::string& name);

}  // namespace qrfsim::scenario
