#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qrfsim/event/closed_form.hpp"
#include "qrfsim/event/distribution.hpp"
#include "qrfsim/model/diagnostics.hpp"
#include "qrfsim/scenario/config.hpp"

namespace qrfsim::scenario {

struct RunOptions {
  std::string out_dir;  // empty: no files written
  double max_mem_mb = 2048.0;
  std::optional<double> sigma_t_override;
  std::optional<unsigned long long> seed_override;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunResult {
  std::vector<CheckResult> checks;
  bool all_pass = true;

  std::optional<frame::HistoryState> history;
  std::optional<event::EventTimeDistribution> distribution;
  std::vector<double> predicted_peaks;
  std::optional<model::RegimeDiagnostics> diagnostics;
  double energy_drift = 0.0;
  double max_norm_defect = 0.0;
  double closed_form_max_l2 = -1.0;  // < 0: not run

  std::optional<frame::SchrodingerCheckReport> schro_report;
  std::optional<frame::SwapCheckReport> swap_report;

  nlohmann::json manifest() const;  // built by run_scenario
  nlohmann::json manifest_json;
};

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

/// Runs several configs across worker threads, one isolated scenario each.
/// Returns per-config pass flags.
std::vector<bool> run_batch(const std::vector<std::string>& config_paths,
                            const RunOptions& base_opts, int threads);

}  // namespace qrfsim::scenario
