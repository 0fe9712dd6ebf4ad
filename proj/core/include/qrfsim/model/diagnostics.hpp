#pragma once

#include <string>

#include "qrfsim/model/model.hpp"
#include "qrfsim/num/wavefunction.hpp"

namespace qrfsim::model {

/// Magnitudes of the perturbative parameters over a state: eps_g = <|Phi|>/c^2
/// at the particle's relative position, eps_p^2 = <k^2>/(mc)^2, eps_p^4, and
/// the dropped mixed order eps_g*eps_p^2 (product of the marginal
/// expectations; exact for product states).
struct RegimeDiagnostics {
  double eps_g = 0.0;
  double eps_p2 = 0.0;
  double eps_p4 = 0.0;
  double eps_g_p2 = 0.0;
  double dropped_over_retained = 0.0;
  bool flagged = false;  // dropped above 1e-3 of the retained magnitudes
};

inline constexpr double kDroppedTermFlag = 1e-3;

/// spatial_axis must currently be in position basis or momentum basis; both
/// the position moments (for Phi) and momentum moments (for eps_p) are taken,
/// toggling a copy as needed. q_M is the sharp source position in frame
/// coordinates.
RegimeDiagnostics regime_diagnostics(const num::WaveFunction& psi,
                                     const ModelParams& params, int particle,
                                     const std::string& spatial_axis, double q_M);

}  // namespace qrfsim::model
