#include "qrfsim/scenario/manifest.hpp"

#include <nlohmann/json.hpp>

#include "qrfsim/scenario/runner.hpp"

namespace qrfsim::scenario {

using nlohmann::json;

json build_manifest(const ScenarioConfig& cfg, const RunResult& result, double wall_ms) {
  json m;
  m["artifact"] = "qrfsim";
  m["version"] = kArtifactVersion;
  const json cfg_json = to_json(cfg);
  m["config"] = cfg_json;
  m["config_hash"] = config_hash(cfg_json);
  m["wall_ms"] = wall_ms;

  json checks = json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  m["checks"] = std::move(checks);
  m["all_pass"] = result.all_pass;

  if (result.diagnostics) {
    const auto& d = *result.diagnostics;
    m["regime_diagnostics"] = {
        {"eps_g", d.eps_g},           {"eps_p2", d.eps_p2},
        {"eps_p4", d.eps_p4},         {"eps_g_p2", d.eps_g_p2},
        {"dropped_over_retained", d.dropped_over_retained},
        {"flagged", d.flagged},
    };
  }
  if (!result.predicted_peaks.empty()) m["predicted_peaks"] = result.predicted_peaks;
  if (result.closed_form_max_l2 >= 0.0) {
    m["closed_form_max_l2"] = result.closed_form_max_l2;
  }
  return m;
}

}  // namespace qrfsim::scenario
