#pragma once

#include <variant>
#include <vector>

#include "qrfsim/num/kernel.hpp"

namespace qrfsim::num {

/// One operation of a split-step cycle.
struct ToggleBasisOp {
  std::string axis;
};
struct PhaseOp {
  DiagonalKernel kernel;  // real values; phase applied is exp(-i*values*weight*dtau)
  double weight = 1.0;
};
using PlanOp = std::variant<ToggleBasisOp, PhaseOp>;

/// An ordered split-step cycle applied n_steps times with step dtau.
/// Each PhaseOp must find its axes in the bases it requires at that point of
/// the cycle; the cycle must return every axis to its starting basis.
struct TrotterPlan {
  double dtau = 0.0;
  std::vector<PlanOp> sequence;
};

/// Convenience: symmetric (Strang) cycle  A/2, B/2, ..., Z, ..., B/2, A/2
/// with the basis toggles needed between kernels inserted automatically.
/// Kernels are applied in the order given on the way in.
TrotterPlan make_strang_plan(double dtau, const std::vector<DiagonalKernel>& kernels,
                             const WaveFunction& prototype);

/// Applies the cycle n_steps times. Phase tables are precomputed once.
WaveFunction trotter_evolve(const TrotterPlan& plan, const WaveFunction& psi,
                            long n_steps);

/// Applies the generator (sum of the plan's kernels, weights ignored) once:
/// H psi, transforming bases as needed and restoring them. Used for dense
/// materialization and energy expectations.
WaveFunction apply_generator(const std::vector<DiagonalKernel>& kernels,
                             const WaveFunction& psi);

/// <psi| sum_k K |psi>, toggling bases as needed per kernel.
double generator_expectation(const std::vector<DiagonalKernel>& kernels,
                             const WaveFunction& psi);

}  // namespace qrfsim::num
