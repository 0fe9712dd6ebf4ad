#pragma once

#include <nlohmann/json_fwd.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrfsim/event/event.hpp"
#include "qrfsim/frame/hamiltonian.hpp"
#include "qrfsim/frame/schrodinger_check.hpp"
#include "qrfsim/frame/swap_check.hpp"
#include "qrfsim/model/model.hpp"

namespace qrfsim::scenario {

/// Gaussian packet on one axis: center, width, momentum boost.
struct PacketSpec {
  double center = 0.0;
  double width = 1.0;
  double momentum = 0.0;
};

struct BranchSpec {
  num::cplx amplitude{1.0, 0.0};
  std::map<std::string, PacketSpec> packets;  // per axis label
};

struct AxisSpec {
  std::string label;
  frame::AxisRole role = frame::AxisRole::RelativePosition;
  int particle = 0;
  int n = 0;
  double length = 0.0;
  double offset = 0.0;
};

enum class ScenarioKind { Evolution, SchrodingerLimit, QrfSwap };
std::string kind_name(ScenarioKind k);

/// A fully parsed scenario document. Parsing is strict: unknown keys are
/// rejected, physical quantities carry unit strings, the schema is versioned.
struct ScenarioConfig {
  int schema_version = 1;
  std::string name;
  ScenarioKind kind = ScenarioKind::Evolution;
  unsigned long long seed = 0;

  model::Regime regime = model::Regime::Galilean;
  model::ModelParams params;
  double q_M = 0.0;

  std::vector<AxisSpec> axes;
  std::vector<BranchSpec> branches;

  bool has_event = false;
  event::EventSpec event;

  struct TauGrid {
    int n = 0;
    double length = 0.0;
    double offset = 0.0;
  } tau;
  double dtau = 1e-3;

  bool export_full_history = false;
  bool run_closed_form = false;  // also build the closed form and cross-validate

  // kind-specific settings
  frame::SchrodingerCheckConfig schro;
  frame::SwapCheckConfig swap;

  num::Grid1D tau_grid() const { return num::Grid1D{tau.n, tau.length / tau.n, tau.offset}; }
};

ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_file(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& cfg);

/// Builds the initial product-branch state over the configured axes.
num::WaveFunction build_initial_state(const ScenarioConfig& cfg);

/// Layout view of the configured axes.
frame::AxisLayout layout_of(const ScenarioConfig& cfg);

/// FNV-1a over the canonical serialization; the manifest's config hash.
std::string config_hash(const nlohmann::json& doc);

}  // namespace qrfsim::scenario
