#include "qrfsim/scenario/presets.hpp"

#include <cmath>

#include "qrfsim/errors.hpp"

namespace qrfsim::scenario {

namespace {

AxisSpec axis(const std::string& label, frame::AxisRole role, int particle, int n,
              double length, double offset) {
  AxisSpec a;
  a.label = label;
  a.role = role;
  a.particle = particle;
  a.n = n;
  a.length = length;
  a.offset = offset;
  return a;
}

PacketSpec packet(double center, double width, double momentum = 0.0) {
  return PacketSpec{center, width, momentum};
}

ScenarioConfig galilean_event() {
  ScenarioConfig cfg;
  cfg.name = "galilean-event";
  cfg.regime = model::Regime::Galilean;
  cfg.params.masses = {1.0, 1.0};
  cfg.params.GM = 0.0;
  cfg.params.c = 10.0;
  cfg.params.r_min = 1.0;
  cfg.axes = {
      axis("q2", frame::AxisRole::RelativePosition, 2, 64, 64.0, -32.0),
      axis("t2", frame::AxisRole::Clock, 2, 512, 14.08, -3.0),
      axis("pointer", frame::AxisRole::Pointer, 0, 2, 2.0, 0.0),
  };
  // the clock packet is kept well below sigma_t so the occurrence step is
  // window-limited, not clock-limited
  BranchSpec b;
  b.amplitude = {1.0, 0.0};
  b.packets["q2"] = packet(0.0, 2.0, 0.0);
  b.packets["t2"] = packet(0.0, 0.08);
  cfg.branches = {b};
  cfg.has_event = true;
  cfg.event.tau2_star = 5.0;
  cfg.event.sigma_t = 0.2;
  cfg.tau = {128, 4.0, 4.0};
  cfg.dtau = 0.015625;
  return cfg;
}

ScenarioConfig sr_two_momenta() {
  ScenarioConfig cfg;
  cfg.name = "sr-two-momenta";
  cfg.regime = model::Regime::SpecialRelativistic;
  cfg.params.masses = {5.0, 10.0};  // m2 = 2 m1; eps_p = k/(m2 c)
  cfg.params.GM = 0.0;
  cfg.params.c = 1.0;
  cfg.params.r_min = 1.0;
  cfg.axes = {
      axis("q2", frame::AxisRole::RelativePosition, 2, 512, 320.0, -160.0),
      axis("t2", frame::AxisRole::Clock, 2, 512, 46.08, -5.0),
      axis("pointer", frame::AxisRole::Pointer, 0, 2, 2.0, 0.0),
  };
  // branch momenta k = 2 and 4: eps_p = 0.2 and 0.4; weights 0.36 / 0.64
  BranchSpec a;
  a.amplitude = {0.6, 0.0};
  a.packets["q2"] = packet(-80.0, 10.0, 2.0);
  a.packets["t2"] = packet(0.0, 0.25);
  BranchSpec b;
  b.amplitude = {0.8, 0.0};
  b.packets["q2"] = packet(-80.0, 10.0, 4.0);
  b.packets["t2"] = packet(0.0, 0.25);
  cfg.branches = {a, b};
  cfg.has_event = true;
  cfg.event.tau2_star = 30.0;
  cfg.event.sigma_t = 0.15;
  cfg.tau = {64, 6.4, 23.6};
  cfg.dtau = 0.02;
  return cfg;
}

ScenarioConfig newtonian_two_positions() {
  ScenarioConfig cfg;
  cfg.name = "newtonian-two-positions";
  cfg.regime = model::Regime::Newtonian;
  // heavy particles: the position branches stay put over the run
  cfg.params.masses = {2000.0, 2000.0};
  cfg.params.GM = 0.15;  // |Phi|/c^2 = 5e-3 at r = 30, 1e-3 at r = 150
  cfg.params.c = 1.0;
  cfg.params.r_min = 1.0;
  cfg.q_M = -3000.0;
  cfg.axes = {
      axis("q2", frame::AxisRole::RelativePosition, 2, 128, 160.0, -2990.0),
      axis("t2", frame::AxisRole::Clock, 2, 2048, 146.0, -10.0),
      axis("pointer", frame::AxisRole::Pointer, 0, 2, 2.0, 0.0),
  };
  BranchSpec near;  // r = 30 from the source
  near.amplitude = {std::sqrt(0.5), 0.0};
  near.packets["q2"] = packet(-2970.0, 2.0, 0.0);
  near.packets["t2"] = packet(0.0, 0.18);
  BranchSpec far;  // r = 150
  far.amplitude = {std::sqrt(0.5), 0.0};
  far.packets["q2"] = packet(-2850.0, 2.0, 0.0);
  far.packets["t2"] = packet(0.0, 0.18);
  cfg.branches = {near, far};
  cfg.has_event = true;
  cfg.event.tau2_star = 120.0;
  cfg.event.sigma_t = 0.107;
  cfg.tau = {64, 2.048, 119.84};
  cfg.dtau = 0.032;
  return cfg;
}

ScenarioConfig schrodinger_limit() {
  ScenarioConfig cfg;
  cfg.name = "schrodinger-limit";
  cfg.kind = ScenarioKind::SchrodingerLimit;
  cfg.regime = model::Regime::Newtonian;
  cfg.params.masses = {1.0};
  cfg.params.GM = 100.0;
  cfg.params.c = 10.0;
  cfg.params.r_min = 1.0;
  cfg.q_M = -500.0;
  cfg.schro.params = cfg.params;
  cfg.schro.q_M = cfg.q_M;
  cfg.schro.grid = num::make_uniform_grid(256, 64.0, -32.0);
  cfg.schro.packet_center = -8.0;
  cfg.schro.packet_width = 2.0;
  cfg.schro.packet_k0 = 2.0;
  cfg.schro.total_time = 2.0;
  cfg.schro.dtau = 1e-3;
  cfg.schro.n_samples = 8;
  return cfg;
}

ScenarioConfig qrf_swap_mirror() {
  ScenarioConfig cfg;
  cfg.name = "qrf-swap-mirror";
  cfg.kind = ScenarioKind::QrfSwap;
  cfg.regime = model::Regime::Galilean;
  cfg.params.masses = {1.0, 1.0};
  cfg.params.GM = 0.0;
  cfg.params.c = 1.0;
  cfg.params.r_min = 1.0;
  cfg.swap.mass = 1.0;
  cfg.swap.grid = num::make_uniform_grid(128, 64.0, -32.0);
  cfg.swap.packet_center = 4.0;
  cfg.swap.packet_width = 2.0;
  cfg.swap.packet_k0 = 1.0;
  cfg.swap.tau_max = 2.0;
  cfg.swap.n_snapshots = 8;
  cfg.swap.dtau = 1e-3;
  return cfg;
}

}  // namespace

std::vector<PresetInfo> preset_list() {
  return {
      {"galilean-event",
       "ideal clocks, no gravity: the measurement appears as a sharp step at tau2*"},
      {"sr-two-momenta",
       "superposed special-relativistic time dilations: bimodal occurrence density"},
      {"newtonian-two-positions",
       "superposed gravitational redshifts: bimodal occurrence density"},
      {"schrodinger-limit",
       "constraint-derived propagator against an independent Schrodinger propagator"},
      {"qrf-swap-mirror",
       "frame change 1<->2: symbolic form-invariance and mirrored numerics"},
  };
}

ScenarioConfig preset(const std::string& name) {
  if (name == "galilean-event") return galilean_event();
  if (name == "sr-two-momenta") return sr_two_momenta();
  if (name == "newtonian-two-positions") return newtonian_two_positions();
  if (name == "schrodinger-limit") return schrodinger_limit();
  if (name == "qrf-swap-mirror") return qrf_swap_mirror();
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace qrfsim::scenario
