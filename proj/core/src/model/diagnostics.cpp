#include "qrfsim/model/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qrfsim/num/spectral.hpp"

namespace qrfsim::model {

RegimeDiagnostics regime_diagnostics(const num::WaveFunction& psi,
                                     const ModelParams& params, int particle,
                                     const std::string& spatial_axis, double q_M) {
  RegimeDiagnostics diag;
  const double m = params.mass(particle);
  const double mc = m * params.c;

  num::WaveFunction work = psi;
  const std::size_t axis = work.axis_index(spatial_axis);

  if (work.basis(axis) != num::Basis::Position) num::toggle_axis_basis(work, axis);
  {
    const auto dist = num::marginal(work, axis);
    const auto& ax = work.axis(axis);
    double w = 0.0, phi_abs = 0.0;
    for (int i = 0; i < ax.grid.n; ++i) {
      const double q = ax.coord(i);
      w += dist[static_cast<std::size_t>(i)];
      phi_abs += std::abs(potential(q - q_M, params)) * dist[static_cast<std::size_t>(i)];
    }
    diag.eps_g = phi_abs / w / (params.c * params.c);
  }

  num::toggle_axis_basis(work, axis);
  {
    const auto dist = num::marginal(work, axis);
    const auto& ax = work.axis(axis);
    double w = 0.0, k2 = 0.0, k4 = 0.0;
    for (int i = 0; i < ax.grid.n; ++i) {
      const double k = ax.coord(i);
      const double u = (k / mc) * (k / mc);
      w += dist[static_cast<std::size_t>(i)];
      k2 += u * dist[static_cast<std::size_t>(i)];
      k4 += u * u * dist[static_cast<std::size_t>(i)];
    }
    diag.eps_p2 = k2 / w;
    diag.eps_p4 = k4 / w;
  }

  diag.eps_g_p2 = diag.eps_g * diag.eps_p2;
  const double retained = std::max({diag.eps_g, diag.eps_p2, diag.eps_p4});
  diag.dropped_over_retained = retained > 0.0 ? diag.eps_g_p2 / retained : 0.0;
  diag.flagged = diag.dropped_over_retained > kDroppedTermFlag;
  return diag;
}

}  // namespace qrfsim::model
