#include "qrfsim/frame/hamiltonian.hpp"

#include <cmath>
#include <functional>

#include "qrfsim/errors.hpp"

namespace qrfsim::frame {

std::string axis_role_name(AxisRole r) {
  switch (r) {
    case AxisRole::RelativePosition:
      return "relative_position";
    case AxisRole::Clock:
      return "clock";
    case AxisRole::Pointer:
      return "pointer";
    case AxisRole::MassPosition:
      return "mass_position";
    case AxisRole::MassTime:
      return "mass_time";
  }
  return "?";
}

AxisRole axis_role_from_name(const std::string& name) {
  if (name == "relative_position") return AxisRole::RelativePosition;
  if (name == "clock") return AxisRole::Clock;
  if (name == "pointer") return AxisRole::Pointer;
  if (name == "mass_position") return AxisRole::MassPosition;
  if (name == "mass_time") return AxisRole::MassTime;
  throw ConfigError("unknown axis role '" + name + "'");
}

const AxisLayout::Entry* AxisLayout::find(AxisRole role, int particle) const {
  for (const auto& e : entries) {
    if (e.role == role && (particle == 0 || e.particle == particle)) return &e;
  }
  return nullptr;
}

std::vector<AxisLayout::Entry> AxisLayout::all_of(AxisRole role) const {
  std::vector<Entry> out;
  for (const auto& e : entries) {
    if (e.role == role) out.push_back(e);
  }
  return out;
}

namespace {

// Builds a kernel over the given axes by calling fn with the per-axis
// coordinates (in the required bases).
num::DiagonalKernel product_kernel(
    const num::WaveFunction& proto, const std::string& name,
    const std::vector<std::pair<std::string, num::Basis>>& axes,
    const std::function<double(const std::vector<double>&)>& fn) {
  num::DiagonalKernel k;
  k.name = name;
  std::vector<const num::Axis*> ax;
  for (const auto& [label, basis] : axes) {
    k.acts_on.push_back(label);
    k.basis_required.push_back(basis);
    ax.push_back(&proto.axis(proto.axis_index(label)));
  }
  std::size_t total = 1;
  for (const auto* a : ax) total *= static_cast<std::size_t>(a->grid.n);
  std::vector<int> idx(ax.size(), 0);
  std::vector<double> coords(ax.size());
  k.values.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < ax.size(); ++a) {
      coords[a] = (axes[a].second == num::Basis::Position)
                      ? ax[a]->grid.point(idx[a])
                      : ax[a]->grid.conjugate_point(idx[a]);
    }
    k.values.push_back(num::cplx{fn(coords), 0.0});
    for (std::size_t a = ax.size(); a-- > 0;) {
      if (++idx[a] < ax[a]->grid.n) break;
      idx[a] = 0;
    }
  }
  return k;
}

}  // namespace

HamiltonianSpec build_hamiltonian(model::Regime regime, const model::ModelParams& params,
                                  double q_M, const num::WaveFunction& prototype,
                                  const AxisLayout& layout, int frame) {
  params.validate();
  if (frame < 1 || frame > params.n_particles()) {
    throw ConfigError("frame particle out of range");
  }
  if ((regime == model::Regime::Galilean ||
       regime == model::Regime::SpecialRelativistic) &&
      params.GM != 0.0) {
    throw ConfigError(model::regime_name(regime) + " regime requires GM = 0");
  }

  HamiltonianSpec spec;
  spec.regime = regime;
  spec.params = params;
  spec.q_M = q_M;
  spec.frame = frame;
  spec.layout = layout;

  const double c = params.c;
  const double c2 = c * c;
  const double m_frame = params.mass(frame);

  struct PInfo {
    int particle;
    std::string spatial;
    std::string clock;  // empty if none
    double mass;
  };
  std::vector<PInfo> parts;
  for (int p = 1; p <= params.n_particles(); ++p) {
    if (p == frame) continue;
    const auto* sp = layout.find(AxisRole::RelativePosition, p);
    if (!sp) {
      throw ConfigError("axis layout incompatible with regime: no relative-position "
                        "axis for particle " + std::to_string(p));
    }
    const auto* ck = layout.find(AxisRole::Clock, p);
    parts.push_back({p, sp->label, ck ? ck->label : "", params.mass(p)});
  }
  if (parts.empty()) throw ConfigError("no non-frame particles configured");

  const auto* mass_pos = layout.find(AxisRole::MassPosition);
  const auto* mass_time = layout.find(AxisRole::MassTime);

  const bool relativistic = regime == model::Regime::SpecialRelativistic ||
                            regime == model::Regime::Full;
  const bool gravity = (regime == model::Regime::Newtonian ||
                        regime == model::Regime::Full) &&
                       params.GM != 0.0;

  // ---- momentum-side kernel over all spatial momenta and clock energies ----
  std::vector<std::pair<std::string, num::Basis>> kin_axes;
  std::vector<int> kin_spatial_index(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    kin_spatial_index[i] = static_cast<int>(kin_axes.size());
    kin_axes.emplace_back(parts[i].spatial, num::Basis::Momentum);
  }
  int mass_mom_index = -1;
  if (mass_pos) {
    mass_mom_index = static_cast<int>(kin_axes.size());
    kin_axes.emplace_back(mass_pos->label, num::Basis::Momentum);
  }
  int mass_time_index = -1;
  if (mass_time) {
    mass_time_index = static_cast<int>(kin_axes.size());
    kin_axes.emplace_back(mass_time->label, num::Basis::Momentum);
  }
  std::vector<int> kin_clock_index(parts.size(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].clock.empty()) {
      kin_clock_index[i] = static_cast<int>(kin_axes.size());
      kin_axes.emplace_back(parts[i].clock, num::Basis::Momentum);
    }
  }

  auto kin_value = [&](const std::vector<double>& u) {
    double ksum = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      ksum += u[static_cast<std::size_t>(kin_spatial_index[i])];
    }
    if (mass_mom_index >= 0) ksum += u[static_cast<std::size_t>(mass_mom_index)];
    double value = 0.0;
    if (relativistic) {
      const double gsum = model::gamma_factor(ksum, m_frame, c);
      double bracket = 0.0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const double k = u[static_cast<std::size_t>(kin_spatial_index[i])];
        const double gi = model::gamma_factor(k, parts[i].mass, c);
        bracket += parts[i].mass * c2 * gi;
        if (kin_clock_index[i] >= 0) {
          bracket += u[static_cast<std::size_t>(kin_clock_index[i])] / gi;
        }
      }
      value = gsum * bracket + m_frame * c2 * gsum * gsum;
      if (mass_time_index >= 0) {
        value += c * gsum * u[static_cast<std::size_t>(mass_time_index)];
      }
    } else {
      const bool rest = regime == model::Regime::Newtonian;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const double k = u[static_cast<std::size_t>(kin_spatial_index[i])];
        value += k * k / (2.0 * parts[i].mass);
        if (rest) value += parts[i].mass * c2;
        if (kin_clock_index[i] >= 0) {
          value += u[static_cast<std::size_t>(kin_clock_index[i])];
        }
      }
      value += ksum * ksum / (2.0 * m_frame);
      if (rest) value += m_frame * c2;
      if (mass_time_index >= 0) value += c * u[static_cast<std::size_t>(mass_time_index)];
    }
    return value;
  };
  spec.kernels.push_back(product_kernel(prototype, "kinetic", kin_axes, kin_value));

  // rest-energy constant at k = 0, E = 0 (reported, kept in the kernel)
  if (regime == model::Regime::Galilean) {
    spec.rest_energy_offset = 0.0;
  } else {
    double rests = m_frame * c2;
    for (const auto& p : parts) rests += p.mass * c2;
    spec.rest_energy_offset = rests;
  }

  // ---- gravitational kernels, one per particle ----
  if (gravity) {
    for (const auto& p : parts) {
      std::vector<std::pair<std::string, num::Basis>> axes;
      axes.emplace_back(p.spatial, num::Basis::Position);
      const int qm_index = mass_pos ? 1 : -1;
      if (mass_pos) axes.emplace_back(mass_pos->label, num::Basis::Position);
      const int clock_index = p.clock.empty() ? -1 : static_cast<int>(axes.size());
      if (!p.clock.empty()) axes.emplace_back(p.clock, num::Basis::Momentum);
      const double mass_i = p.mass;
      auto value = [&, qm_index, clock_index, mass_i](const std::vector<double>& u) {
        const double qm = qm_index >= 0 ? u[static_cast<std::size_t>(qm_index)] : q_M;
        const double factor =
            model::sqrt_transformed_metric_minus_one(u[0], qm, params);
        double energy = mass_i * c2;
        if (clock_index >= 0) energy += u[static_cast<std::size_t>(clock_index)];
        return factor * energy;
      };
      spec.kernels.push_back(
          product_kernel(prototype, "metric_" + p.spatial, axes, value));
    }
    if (mass_pos && mass_time) {
      // c (sqrt(g^00(qM)) - 1) k0_M, the part of the source-mass generator
      // term that is diagonal on the position side
      auto value = [&](const std::vector<double>& u) {
        const double g00 = model::metric_g00(u[0], params);
        return c * (1.0 / std::sqrt(g00) - 1.0) * u[1];
      };
      spec.kernels.push_back(product_kernel(
          prototype, "mass_redshift",
          {{mass_pos->label, num::Basis::Position}, {mass_time->label, num::Basis::Momentum}},
          value));
    }
  }

  return spec;
}

double energy_expectation(const HamiltonianSpec& spec, const num::WaveFunction& psi) {
  return num::generator_expectation(spec.kernels, psi);
}

double clock_rate(const HamiltonianSpec& spec, double k_total, double q_i, int particle) {
  const auto& params = spec.params;
  double rate = 1.0;
  if (spec.regime == model::Regime::SpecialRelativistic ||
      spec.regime == model::Regime::Full) {
    rate = model::gamma_factor(k_total, params.mass(spec.frame), params.c) /
           model::gamma_factor(k_total, params.mass(particle), params.c);
  }
  if ((spec.regime == model::Regime::Newtonian || spec.regime == model::Regime::Full) &&
      params.GM != 0.0) {
    rate += model::sqrt_transformed_metric_minus_one(q_i, spec.q_M, params);
  }
  return rate;
}

double delta12(model::Regime regime, const model::ModelParams& params, double k2,
               double q2, double q_M, double k_M, int frame, int measured) {
  switch (regime) {
    case model::Regime::Galilean:
      return 1.0;
    case model::Regime::SpecialRelativistic:
      return model::gamma_factor(k2 + k_M, params.mass(frame), params.c) /
             model::gamma_factor(k2, params.mass(measured), params.c);
    case model::Regime::Newtonian:
      return std::sqrt(model::transformed_metric(q2, q_M, params));
    case model::Regime::Full:
      return std::sqrt(model::transformed_metric(q2, q_M, params)) *
             model::gamma_factor(k2 + k_M, params.mass(frame), params.c) /
             model::gamma_factor(k2, params.mass(measured), params.c);
  }
  throw ContractError("unreachable regime");
}

}  // namespace qrfsim::frame
