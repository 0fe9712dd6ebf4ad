#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qrfsim/num/wavefunction.hpp"

namespace qrfsim::num {

/// Operator diagonal in a product of per-axis bases: pointwise multiplier
/// broadcast over the axes it does not act on.
struct DiagonalKernel {
  std::string name;
  std::vector<std::string> acts_on;    // axis labels, slowest first
  std::vector<Basis> basis_required;   // per acted axis
  std::vector<cplx> values;            // row-major over acted axes

  bool is_real(double tol = 0.0) const;
};

/// Pointwise multiplication. Throws ContractError if the wavefunction's
/// current bases do not match basis_required (never transforms silently).
WaveFunction apply_diagonal(const DiagonalKernel& kernel, const WaveFunction& psi);
void apply_diagonal_in_place(const DiagonalKernel& kernel, WaveFunction& psi);

/// <psi|K|psi> with grid measure. Same basis contract as apply_diagonal.
cplx expectation(const DiagonalKernel& kernel, const WaveFunction& psi);

/// Checks bases and returns the kernel-index stride table used to broadcast
/// kernel values over the full amplitude array.
std::vector<std::size_t> broadcast_plan(const DiagonalKernel& kernel,
                                        const WaveFunction& psi);

}  // namespace qrfsim::num
