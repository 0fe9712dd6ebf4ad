#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrfsim/model/model.hpp"
#include "qrfsim/num/kernel.hpp"
#include "qrfsim/num/trotter.hpp"

namespace qrfsim::frame {

enum class AxisRole { RelativePosition, Clock, Pointer, MassPosition, MassTime };

std::string axis_role_name(AxisRole r);
AxisRole axis_role_from_name(const std::string& name);

/// Maps wavefunction axis labels onto their physical meaning.
struct AxisLayout {
  struct Entry {
    std::string label;
    AxisRole role = AxisRole::RelativePosition;
    int particle = 0;  // which particle (1-based); unused for pointer
  };
  std::vector<Entry> entries;

  const Entry* find(AxisRole role, int particle = 0) const;
  std::vector<Entry> all_of(AxisRole role) const;
  bool has(AxisRole role, int particle = 0) const { return find(role, particle); }
};

/// Regime-tagged realization of the relational Hamiltonian as a list of
/// diagonal kernels: one momentum-side kernel (kinetic, frame dilation and
/// clock-energy rates) and, when gravity is on, one position-side kernel per
/// particle carrying (sqrt(g'00)-1) times the rest+internal energy. The
/// cross orders dropped between the two are exactly the regime's dropped
/// eps_g*eps_p^2 class.
struct HamiltonianSpec {
  model::Regime regime = model::Regime::Galilean;
  model::ModelParams params;
  double q_M = 0.0;  // sharp source position in frame coordinates
  int frame = 1;
  AxisLayout layout;
  std::vector<num::DiagonalKernel> kernels;
  double rest_energy_offset = 0.0;  // constant at k = 0, E = 0 (reported)
};

/// Builds the kernels on the prototype's grids. Requires one relative-position
/// axis per non-frame particle; clock axes are optional per particle.
HamiltonianSpec build_hamiltonian(model::Regime regime, const model::ModelParams& params,
                                  double q_M, const num::WaveFunction& prototype,
                                  const AxisLayout& layout, int frame = 1);

/// <H> for diagnostics and the conservation invariant.
double energy_expectation(const HamiltonianSpec& spec, const num::WaveFunction& psi);

/// Clock rate dT_i/dtau1 = Delta_12 as realized by the kernels: the
/// momentum-side rate (per regime) plus the gravitational part.
double clock_rate(const HamiltonianSpec& spec, double k_total, double q_i, int particle);

/// The worldline-operator value Delta_12 in the product form of the paper
/// (reporting / peak prediction).
double delta12(model::Regime regime, const model::ModelParams& params, double k2,
               double q2, double q_M, double k_M = 0.0, int frame = 1,
               int measured = 2);

}  // namespace qrfsim::frame
