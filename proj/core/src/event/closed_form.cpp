#include "qrfsim/event/closed_form.hpp"

#include <cmath>

#include "qrfsim/errors.hpp"
#include "qrfsim/num/spectral.hpp"
#include "qrfsim/num/trotter.hpp"

namespace qrfsim::event {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

struct Axes {
  std::size_t spatial = 0, clock = 0, pointer = 0;
  bool has_pointer = false;
};

Axes resolve(const frame::HamiltonianSpec& spec, const EventSpec& event,
             const num::WaveFunction& proto) {
  Axes ax;
  const auto* sp =
      spec.layout.find(frame::AxisRole::RelativePosition, event.measured_particle);
  const auto* ck = spec.layout.find(frame::AxisRole::Clock, event.measured_particle);
  if (!sp || !ck) throw ConfigError("closed form: measured particle needs q and t axes");
  ax.spatial = proto.axis_index(sp->label);
  ax.clock = proto.axis_index(ck->label);
  if (event.mode == EventSpec::Mode::Pointer) {
    const auto* ptr = spec.layout.find(frame::AxisRole::Pointer);
    if (!ptr) throw ConfigError("closed form: pointer mode requires a pointer axis");
    ax.pointer = proto.axis_index(ptr->label);
    ax.has_pointer = true;
  }
  return ax;
}

// Applies the pointer rotation with the integrated angle field. Expects the
// clock axis in position basis and the pointer (if any) toggled to its
// conjugate basis by the caller; rate may depend on the spatial coordinate in
// its current basis.
void apply_rotation(num::WaveFunction& psi, const Axes& ax, const EventSpec& event,
                    double tau1, const std::vector<double>& rate_by_spatial) {
  const auto& clock_axis = psi.axis(ax.clock);
  const auto& spatial_axis = psi.axis(ax.spatial);
  const std::size_t s_clock = psi.stride(ax.clock);
  const std::size_t s_spatial = psi.stride(ax.spatial);
  const std::size_t s_ptr = ax.has_pointer ? psi.stride(ax.pointer) : 0;
  const int n_clock = clock_axis.grid.n;
  const int n_spatial = spatial_axis.grid.n;
  auto& amp = psi.amplitudes();
  const double sigma = event.sigma_t;

  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    const int it = static_cast<int>((flat / s_clock) % static_cast<std::size_t>(n_clock));
    const int iq =
        static_cast<int>((flat / s_spatial) % static_cast<std::size_t>(n_spatial));
    const double rate = rate_by_spatial[static_cast<std::size_t>(iq)];
    const double t2 = clock_axis.coord(it);
    const double theta =
        (normal_cdf((t2 + rate * tau1 - event.tau2_star) / sigma) -
         normal_cdf((t2 - event.tau2_star) / sigma)) *
        event.kick_phase;
    double sign = 1.0;
    if (ax.has_pointer) {
      const int ip = static_cast<int>((flat / s_ptr) % 2);
      sign = ip == 0 ? -1.0 : 1.0;
    }
    amp[flat] *= std::polar(1.0, -sign * theta);
  }
}

}  // namespace

frame::HistoryState closed_form_history(const frame::HamiltonianSpec& spec,
                                        const EventSpec& event,
                                        const num::WaveFunction& psi0,
                                        const std::vector<PacketBranch>& branches,
                                        const num::Grid1D& tau_grid, double dtau) {
  if (spec.regime == model::Regime::Full) {
    throw RegimeError("closed_form_history: no closed form in the full regime");
  }
  const Axes ax = resolve(spec, event, psi0);
  const auto& params = spec.params;

  frame::HistoryState history;
  history.tau_grid = tau_grid;
  history.snapshots.reserve(static_cast<std::size_t>(tau_grid.n));

  const bool diagonal = spec.regime == model::Regime::Galilean ||
                        spec.regime == model::Regime::SpecialRelativistic;
  if (diagonal) {
    // the momentum-side kernel is the whole Hamiltonian; branches are
    // momentum gridpoints (rate depends on k only)
    if (spec.kernels.size() != 1) {
      throw ContractError("closed form: expected a single momentum-side kernel");
    }
    num::WaveFunction base = psi0;
    if (base.basis(ax.spatial) != num::Basis::Momentum) {
      num::toggle_axis_basis(base, ax.spatial);
    }
    const auto& kgrid = base.axis(ax.spatial).grid;
    std::vector<double> rate(static_cast<std::size_t>(kgrid.n), 1.0);
    if (spec.regime == model::Regime::SpecialRelativistic) {
      for (int i = 0; i < kgrid.n; ++i) {
        const double k = kgrid.conjugate_point(i);
        rate[static_cast<std::size_t>(i)] =
            model::gamma_factor(k, params.mass(spec.frame), params.c) /
            model::gamma_factor(k, params.mass(event.measured_particle), params.c);
      }
    }

    for (int s = 0; s < tau_grid.n; ++s) {
      const double tau1 = tau_grid.point(s);
      num::WaveFunction snap = base;
      if (ax.has_pointer) num::toggle_axis_basis(snap, ax.pointer);
      apply_rotation(snap, ax, event, tau1, rate);
      if (ax.has_pointer) num::toggle_axis_basis(snap, ax.pointer);
      // free evolution: exp(-i K tau1) pointwise in the kernel's own bases
      num::toggle_axis_basis(snap, ax.clock);
      num::DiagonalKernel phase = spec.kernels[0];
      for (auto& v : phase.values) v = std::polar(1.0, -v.real() * tau1);
      num::apply_diagonal_in_place(phase, snap);
      num::toggle_axis_basis(snap, ax.clock);
      // back to the storage bases (position-side spatial axis)
      num::toggle_axis_basis(snap, ax.spatial);
      history.snapshots.push_back(std::move(snap));
    }
    return history;
  }

  // newtonian: configured packet branches, kick time per branch center
  if (branches.empty()) {
    throw ConfigError("closed form: the newtonian regime needs packet branches");
  }
  const auto& qaxis = psi0.axis(ax.spatial);
  // same splitting order as the kicked path (kinetic innermost)
  std::vector<num::DiagonalKernel> kernels(spec.kernels.rbegin(), spec.kernels.rend());
  const auto plan = num::make_strang_plan(dtau, kernels, psi0);
  for (int s = 0; s < tau_grid.n; ++s) {
    const double tau1 = tau_grid.point(s);
    const long steps = std::lround(tau1 / dtau);
    if (std::abs(tau1 - static_cast<double>(steps) * dtau) > 1e-9 * std::max(1.0, tau1)) {
      throw ConfigError("closed form: tau grid points must be multiples of dtau");
    }
    num::WaveFunction snap = num::WaveFunction::zeros(psi0.axes());
    for (const auto& branch : branches) {
      num::WaveFunction b = branch.state;
      const double q_b = num::axis_moments(b, ax.spatial).mean;
      const double rate_b = frame::clock_rate(spec, 0.0, q_b, event.measured_particle);
      std::vector<double> rate(static_cast<std::size_t>(qaxis.grid.n), rate_b);
      if (ax.has_pointer) num::toggle_axis_basis(b, ax.pointer);
      apply_rotation(b, ax, event, tau1, rate);
      if (ax.has_pointer) num::toggle_axis_basis(b, ax.pointer);
      if (steps > 0) b = num::trotter_evolve(plan, b, steps);
      for (std::size_t i = 0; i < snap.size(); ++i) {
        snap.amplitudes()[i] += branch.amplitude * b.amplitudes()[i];
      }
    }
    history.snapshots.push_back(std::move(snap));
  }
  return history;
}

}  // namespace qrfsim::event
