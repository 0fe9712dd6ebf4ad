#pragma once

#include <vector>

#include "qrfsim/model/model.hpp"
#include "qrfsim/num/grid.hpp"

namespace qrfsim::frame {

/// Single particle in the newtonian regime with a static source: the
/// constraint-derived propagator (kernels lowered from the symbolic expansion
/// of c sqrt(g00) omega_p) against an independently coded Schrodinger
/// propagator with potential m Phi and the quartic momentum correction.
struct SchrodingerCheckConfig {
  model::ModelParams params;  // one particle
  double q_M = 0.0;           // static source position
  num::Grid1D grid;
  double packet_center = 0.0;
  double packet_width = 1.0;
  double packet_k0 = 0.0;
  double total_time = 1.0;
  double dtau = 1e-3;
  int n_samples = 8;
  bool quartic_constraint_side = true;
  bool quartic_reference_side = true;
};

struct SchrodingerCheckReport {
  std::vector<double> sample_times;
  std::vector<double> l2_at_samples;
  double l2_final = 0.0;
  double max_l2 = 0.0;
  double travel_spacings = 0.0;  // how far the packet center moved
};

SchrodingerCheckReport schrodinger_limit_check(const SchrodingerCheckConfig& cfg);

}  // namespace qrfsim::frame
