#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "qrfsim/scenario/config.hpp"

namespace qrfsim::scenario {

struct RunResult;

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Reproducibility record: config echo + hash, artifact version, regime
/// diagnostics summary, per-check pass/fail, wall clock.
nlohmann::json build_manifest(const ScenarioConfig& cfg, const RunResult& result,
                              double wall_ms);

}  // namespace qrfsim::scenario
