#pragma once

#include "qrfsim/event/event.hpp"

namespace qrfsim::event {

/// One semiclassical branch of the initial state (newtonian position
/// branches). States are unit-normalized; amplitudes carry the weights.
struct PacketBranch {
  num::cplx amplitude{1.0, 0.0};
  num::WaveFunction state;
};

/// History state built from the limit-regime piecewise forms, bypassing the
/// Trotterized time ordering: per branch, free evolution with the kick phase
/// applied as the analytically integrated pointer angle
///   Theta_b(t2; tau1) = N((t2 + rate_b tau1 - tau2*)/sigma) - N((t2 - tau2*)/sigma),
/// which tends to the sharp pre-kick / kick / post-kick composition as
/// sigma_t -> 0. Branch bases: the whole state (galilean), momentum
/// gridpoints (special-relativistic, exact), configured packets (newtonian).
/// The full regime has no closed form.
frame::HistoryState closed_form_history(const frame::HamiltonianSpec& spec,
                                        const EventSpec& event,
                                        const num::WaveFunction& psi0,
                                        const std::vector<PacketBranch>& branches,
                                        const num::Grid1D& tau_grid, double dtau);

}  // namespace qrfsim::event
