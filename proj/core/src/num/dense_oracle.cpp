#include "qrfsim/num/dense_oracle.hpp"

#include <string>

#include "qrfsim/errors.hpp"
#include "qrfsim/num/trotter.hpp"

namespace qrfsim::num {

Eigen::VectorXcd dense_oracle_evolve(const Eigen::MatrixXcd& H,
                                     const Eigen::VectorXcd& psi, double t) {
  const auto dim = H.rows();
  if (dim != H.cols() || dim != psi.size()) {
    throw ContractError("dense_oracle_evolve: shape mismatch");
  }
  if (dim > kOracleMaxDim) {
    throw ResourceError("dense_oracle_evolve: dimension " + std::to_string(dim) +
                        " exceeds " + std::to_string(kOracleMaxDim));
  }
  const double herm_defect = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-10) {
    throw ContractError("dense_oracle_evolve: input is not Hermitian, max |H-H^+| = " +
                        std::to_string(herm_defect));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (H + H.adjoint()));
  const Eigen::VectorXd& evals = es.eigenvalues();
  const Eigen::MatrixXcd& evecs = es.eigenvectors();
  Eigen::VectorXcd coeff = evecs.adjoint() * psi;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) {
    coeff[i] *= std::polar(1.0, -evals[i] * t);
  }
  return evecs * coeff;
}

Eigen::MatrixXcd dense_generator_matrix(const std::vector<DiagonalKernel>& kernels,
                                        const WaveFunction& prototype) {
  const std::size_t dim = prototype.size();
  if (dim > static_cast<std::size_t>(kOracleMaxDim)) {
    throw ResourceError("dense_generator_matrix: dimension exceeds the oracle cap");
  }
  Eigen::MatrixXcd H(dim, dim);
  WaveFunction basis_vec = WaveFunction::zeros(prototype.axes());
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(basis_vec.amplitudes().begin(), basis_vec.amplitudes().end(), cplx{0, 0});
    basis_vec.amplitudes()[j] = cplx{1.0, 0.0};
    const WaveFunction col = apply_generator(kernels, basis_vec);
    for (std::size_t i = 0; i < dim; ++i) {
      H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col.amplitudes()[i];
    }
  }
  return H;
}

Eigen::VectorXcd to_dense_vector(const WaveFunction& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = psi.amplitudes()[i];
  }
  return v;
}

WaveFunction from_dense_vector(const Eigen::VectorXcd& v, const WaveFunction& prototype) {
  if (static_cast<std::size_t>(v.size()) != prototype.size()) {
    throw ContractError("from_dense_vector: size mismatch");
  }
  WaveFunction out = prototype;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.amplitudes()[i] = v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

}  // namespace qrfsim::num
