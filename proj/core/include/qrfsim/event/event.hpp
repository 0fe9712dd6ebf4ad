#pragma once

#include <numbers>
#include <vector>

#include "qrfsim/frame/hamiltonian.hpp"
#include "qrfsim/frame/history.hpp"

namespace qrfsim::event {

/// A measurement at clock-2 proper time tau2*: the delta in the constraint is
/// regularized to a Gaussian window of width sigma_t; the kick accumulates to
/// a sigma-independent total eigenphase.
struct EventSpec {
  double tau2_star = 0.0;
  double kick_phase = std::numbers::pi / 2;  // full pointer flip
  double sigma_t = 0.0;
  enum class Mode { Pointer, Phase } mode = Mode::Pointer;
  int measured_particle = 2;
};

/// Kick kernels realizing Delta_12 * delta_sigma(T2 - tau2*) * Q2, diagonal
/// per regime (momentum side for the special-relativistic factor, position
/// side for the redshift factor; the full regime carries both as a sum, the
/// dropped cross term being of the regime's eps_g*eps_p^2 class).
std::vector<num::DiagonalKernel> event_kernels(const frame::HamiltonianSpec& spec,
                                               const EventSpec& event,
                                               const num::WaveFunction& prototype);

/// Trotterization of the static generator H + Delta_12 delta_sigma(T2-tau2*) Q2;
/// the time-ordered structure of the kicked history state emerges from the
/// clock drift sweeping through the window.
frame::HistoryState evolve_with_event(const num::WaveFunction& psi0,
                                      const frame::HamiltonianSpec& spec,
                                      const EventSpec& event,
                                      const num::Grid1D& tau_grid,
                                      const frame::EvolveOptions& opts);

}  // namespace qrfsim::event
