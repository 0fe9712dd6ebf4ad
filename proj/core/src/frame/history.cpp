#include "qrfsim/frame/history.hpp"

#include <cmath>

#include "qrfsim/errors.hpp"
#include "qrfsim/num/trotter.hpp"

namespace qrfsim::frame {

namespace {

long steps_for(double interval, double dtau, const char* what) {
  const double ratio = interval / dtau;
  const long n = std::lround(ratio);
  if (n < 0 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError(std::string(what) + " must be an integer multiple of dtau");
  }
  return n;
}

}  // namespace

HistoryState evolve_history(const num::WaveFunction& psi0, const HamiltonianSpec& spec,
                            const num::Grid1D& tau_grid, const EvolveOptions& opts,
                            const std::vector<num::DiagonalKernel>& extra_kernels) {
  if (tau_grid.n <= 0) throw ConfigError("empty tau grid");
  if (tau_grid.offset < 0) throw ConfigError("tau grid must start at tau >= 0");

  std::vector<num::DiagonalKernel> kernels = extra_kernels;
  // gravitational kernels as middle factors, the kinetic kernel innermost
  for (auto it = spec.kernels.rbegin(); it != spec.kernels.rend(); ++it) {
    kernels.push_back(*it);
  }

  const auto plan = num::make_strang_plan(opts.dtau, kernels, psi0);

  std::vector<std::size_t> leak_axes;
  for (const auto& e : spec.layout.entries) {
    // pointer: two-state flag; mass time: prepared flat (sharp conjugate
    // momentum), so boundary mass carries no meaning for either
    if (e.role == AxisRole::Pointer || e.role == AxisRole::MassTime) continue;
    leak_axes.push_back(psi0.axis_index(e.label));
  }

  HistoryState history;
  history.tau_grid = tau_grid;
  history.snapshots.reserve(static_cast<std::size_t>(tau_grid.n));

  num::WaveFunction state = psi0;
  const long lead = steps_for(tau_grid.offset, opts.dtau, "tau grid offset");
  const long per_snap = steps_for(tau_grid.spacing, opts.dtau, "tau grid spacing");
  if (lead > 0) state = num::trotter_evolve(plan, state, lead);

  for (int i = 0; i < tau_grid.n; ++i) {
    if (i > 0) state = num::trotter_evolve(plan, state, per_snap);
    if (opts.check_leakage && !leak_axes.empty()) {
      const double leak = num::edge_leakage(state, leak_axes, opts.leak_fraction);
      if (leak > opts.leak_threshold) {
        throw DiagnosticError("edge leakage " + std::to_string(leak) + " at tau1 = " +
                              std::to_string(tau_grid.point(i)) +
                              " exceeds " + std::to_string(opts.leak_threshold));
      }
    }
    history.snapshots.push_back(state);
  }
  return history;
}

const num::WaveFunction& condition_on_clock(const HistoryState& history, double tau1,
                                            bool* snapped) {
  const auto& g = history.tau_grid;
  const double pos = (tau1 - g.offset) / g.spacing;
  const long idx = std::lround(pos);
  if (idx < 0 || idx >= g.n) {
    throw ContractError("tau1 = " + std::to_string(tau1) + " outside the history range");
  }
  if (snapped) *snapped = std::abs(pos - static_cast<double>(idx)) > 1e-9;
  return history.snapshots[static_cast<std::size_t>(idx)];
}

}  // namespace qrfsim::frame
