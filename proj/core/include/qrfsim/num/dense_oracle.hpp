#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qrfsim/num/kernel.hpp"

namespace qrfsim::num {

inline constexpr int kOracleMaxDim = 4096;

/// exp(-i H t) psi by full eigendecomposition (hbar = 1). Independent of the
/// split-step path; this is the brute-force oracle.
/// Throws ResourceError above kOracleMaxDim, ContractError if H is not
/// Hermitian within 1e-10.
Eigen::VectorXcd dense_oracle_evolve(const Eigen::MatrixXcd& H,
                                     const Eigen::VectorXcd& psi, double t);

/// Materializes sum of diagonal kernels as a dense matrix on the prototype's
/// product grid by applying it to basis vectors.
Eigen::MatrixXcd dense_generator_matrix(const std::vector<DiagonalKernel>& kernels,
                                        const WaveFunction& prototype);

Eigen::VectorXcd to_dense_vector(const WaveFunction& psi);
WaveFunction from_dense_vector(const Eigen::VectorXcd& v, const WaveFunction& prototype);

}  // namespace qrfsim::num
