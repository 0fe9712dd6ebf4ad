#pragma once

#include <vector>

#include "qrfsim/frame/hamiltonian.hpp"
#include "qrfsim/num/grid.hpp"
#include "qrfsim/num/wavefunction.hpp"

namespace qrfsim::frame {

/// Conditioned states of the non-frame particles, one per point of the frame
/// clock's proper-time grid.
struct HistoryState {
  num::Grid1D tau_grid;
  std::vector<num::WaveFunction> snapshots;

  double tau(int i) const { return tau_grid.point(i); }
};

struct EvolveOptions {
  double dtau = 1e-3;
  bool check_leakage = true;
  double leak_threshold = 1e-6;
  double leak_fraction = 0.05;
};

/// Split-step evolution sampling snapshots on tau_grid (offset and spacing
/// must be integer multiples of dtau). extra_kernels are folded into the
/// Strang cycle as the outermost factors (the event kick uses this).
HistoryState evolve_history(const num::WaveFunction& psi0, const HamiltonianSpec& spec,
                            const num::Grid1D& tau_grid, const EvolveOptions& opts,
                            const std::vector<num::DiagonalKernel>& extra_kernels = {});

/// Snapshot at tau1: exact grid point, or the nearest one (sets `snapped`).
/// Outside the grid range: ContractError.
const num::WaveFunction& condition_on_clock(const HistoryState& history, double tau1,
                                            bool* snapped = nullptr);

}  // namespace qrfsim::frame
