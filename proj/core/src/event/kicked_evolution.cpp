#include <cmath>
#include <iostream>

#include "qrfsim/errors.hpp"
#include "qrfsim/event/event.hpp"
#include "qrfsim/num/spectral.hpp"

namespace qrfsim::event {

namespace {

double gaussian_window(double t, double sigma) {
  const double u = t / sigma;
  return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

struct EventAxes {
  const num::Axis* clock = nullptr;
  const num::Axis* spatial = nullptr;
  const num::Axis* pointer = nullptr;
  std::string clock_label, spatial_label, pointer_label;
};

EventAxes resolve_axes(const frame::HamiltonianSpec& spec, const EventSpec& event,
                       const num::WaveFunction& proto) {
  EventAxes ax;
  const auto* clock = spec.layout.find(frame::AxisRole::Clock, event.measured_particle);
  if (!clock) {
    throw ConfigError("event: particle " + std::to_string(event.measured_particle) +
                      " carries no clock axis");
  }
  ax.clock_label = clock->label;
  ax.clock = &proto.axis(proto.axis_index(clock->label));
  const auto* sp =
      spec.layout.find(frame::AxisRole::RelativePosition, event.measured_particle);
  if (!sp) throw ConfigError("event: measured particle has no spatial axis");
  ax.spatial_label = sp->label;
  ax.spatial = &proto.axis(proto.axis_index(sp->label));
  if (event.mode == EventSpec::Mode::Pointer) {
    const auto* ptr = spec.layout.find(frame::AxisRole::Pointer);
    if (!ptr) {
      throw ConfigError("event: pointer mode requires a pointer axis");
    }
    ax.pointer_label = ptr->label;
    ax.pointer = &proto.axis(proto.axis_index(ptr->label));
    if (ax.pointer->grid.n != 2) throw ConfigError("event: pointer axis must have n=2");
  }
  if (spec.layout.find(frame::AxisRole::MassPosition) ||
      spec.layout.find(frame::AxisRole::MassTime)) {
    throw ConfigError("event scenarios require the sharp source-mass description");
  }
  const double spacing = ax.clock->grid.spacing;
  const double span = ax.clock->grid.length();
  if (event.sigma_t < spacing) {
    throw ConfigError("sigma_t must be at least the clock-grid spacing");
  }
  if (event.sigma_t > 0.05 * span) {
    throw ConfigError("sigma_t must be at most 5% of the clock-grid span");
  }
  return ax;
}

}  // namespace

std::vector<num::DiagonalKernel> event_kernels(const frame::HamiltonianSpec& spec,
                                               const EventSpec& event,
                                               const num::WaveFunction& prototype) {
  const auto ax = resolve_axes(spec, event, prototype);
  const auto& params = spec.params;
  const bool pointer = event.mode == EventSpec::Mode::Pointer;
  const bool relativistic = spec.regime == model::Regime::SpecialRelativistic ||
                            spec.regime == model::Regime::Full;
  const bool gravity = (spec.regime == model::Regime::Newtonian ||
                        spec.regime == model::Regime::Full) &&
                       params.GM != 0.0;

  const int n_t = ax.clock->grid.n;
  const int n_ptr = pointer ? 2 : 1;
  std::vector<num::DiagonalKernel> kernels;

  auto window_at = [&](int it) {
    return gaussian_window(ax.clock->grid.point(it) - event.tau2_star, event.sigma_t);
  };
  auto pointer_sign = [&](int ip) { return ip == 0 ? -1.0 : 1.0; };

  // momentum-side factor: 1 (galilean/newtonian) or gamma_sum/gamma_2
  {
    num::DiagonalKernel k;
    k.name = "kick_rate";
    const int n_k = relativistic ? ax.spatial->grid.n : 1;
    if (relativistic) {
      k.acts_on.push_back(ax.spatial_label);
      k.basis_required.push_back(num::Basis::Momentum);
    }
    k.acts_on.push_back(ax.clock_label);
    k.basis_required.push_back(num::Basis::Position);
    if (pointer) {
      k.acts_on.push_back(ax.pointer_label);
      k.basis_required.push_back(num::Basis::Momentum);
    }
    for (int ik = 0; ik < n_k; ++ik) {
      double rate = 1.0;
      if (relativistic) {
        const double kv = ax.spatial->grid.conjugate_point(ik);
        rate = model::gamma_factor(kv, params.mass(spec.frame), params.c) /
               model::gamma_factor(kv, params.mass(event.measured_particle), params.c);
      }
      for (int it = 0; it < n_t; ++it) {
        for (int ip = 0; ip < n_ptr; ++ip) {
          const double sign = pointer ? pointer_sign(ip) : 1.0;
          k.values.push_back(
              num::cplx{rate * window_at(it) * sign * event.kick_phase, 0.0});
        }
      }
    }
    kernels.push_back(std::move(k));
  }

  if (gravity) {
    num::DiagonalKernel k;
    k.name = "kick_redshift";
    k.acts_on = {ax.spatial_label, ax.clock_label};
    k.basis_required = {num::Basis::Position, num::Basis::Position};
    if (pointer) {
      k.acts_on.push_back(ax.pointer_label);
      k.basis_required.push_back(num::Basis::Momentum);
    }
    for (int iq = 0; iq < ax.spatial->grid.n; ++iq) {
      const double q = ax.spatial->grid.point(iq);
      const double factor = model::sqrt_transformed_metric_minus_one(q, spec.q_M, params);
      for (int it = 0; it < n_t; ++it) {
        for (int ip = 0; ip < n_ptr; ++ip) {
          const double sign = pointer ? pointer_sign(ip) : 1.0;
          k.values.push_back(
              num::cplx{factor * window_at(it) * sign * event.kick_phase, 0.0});
        }
      }
    }
    kernels.push_back(std::move(k));
  }
  return kernels;
}

frame::HistoryState evolve_with_event(const num::WaveFunction& psi0,
                                      const frame::HamiltonianSpec& spec,
                                      const EventSpec& event,
                                      const num::Grid1D& tau_grid,
                                      const frame::EvolveOptions& opts) {
  const auto kicks = event_kernels(spec, event, psi0);
  // ideal-clock contract: the clock packet should be sharp on the window scale
  {
    const auto* clock = spec.layout.find(frame::AxisRole::Clock, event.measured_particle);
    num::WaveFunction tmp = psi0;
    const std::size_t ci = tmp.axis_index(clock->label);
    if (tmp.basis(ci) != num::Basis::Position) num::toggle_axis_basis(tmp, ci);
    const auto mom = num::axis_moments(tmp, ci);
    const double width = std::sqrt(std::max(0.0, mom.var));
    if (width > 2.0 * event.sigma_t) {
      std::cerr << "qrfsim: warning: clock packet width " << width
                << " exceeds 2 sigma_t = " << 2.0 * event.sigma_t
                << "; running in unsharp-clock mode\n";
    }
  }
  return evolve_history(psi0, spec, tau_grid, opts, kicks);
}

}  // namespace qrfsim::event
