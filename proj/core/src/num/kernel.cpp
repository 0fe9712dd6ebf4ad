#include "qrfsim/num/kernel.hpp"

#include <cmath>

#include "qrfsim/errors.hpp"

namespace qrfsim::num {

bool DiagonalKernel::is_real(double tol) const {
  for (const auto& v : values) {
    if (std::abs(v.imag()) > tol) return false;
  }
  return true;
}

std::vector<std::size_t> broadcast_plan(const DiagonalKernel& kernel,
                                        const WaveFunction& psi) {
  if (kernel.acts_on.size() != kernel.basis_required.size()) {
    throw ContractError("kernel '" + kernel.name + "': acts_on/basis_required mismatch");
  }
  std::size_t expect = 1;
  // kernel value stride per psi axis; zero for axes the kernel ignores
  std::vector<std::size_t> axis_kstride(psi.rank(), 0);
  std::vector<std::size_t> kstrides(kernel.acts_on.size());
  std::size_t running = 1;
  for (std::size_t a = kernel.acts_on.size(); a-- > 0;) {
    const std::size_t pa = psi.axis_index(kernel.acts_on[a]);
    kstrides[a] = running;
    running *= static_cast<std::size_t>(psi.axis(pa).grid.n);
  }
  expect = running;
  if (kernel.values.size() != expect) {
    throw ContractError("kernel '" + kernel.name + "': value array size mismatch");
  }
  for (std::size_t a = 0; a < kernel.acts_on.size(); ++a) {
    const std::size_t pa = psi.axis_index(kernel.acts_on[a]);
    if (psi.basis(pa) != kernel.basis_required[a]) {
      throw ContractError("kernel '" + kernel.name + "': axis '" + kernel.acts_on[a] +
                          "' is not in the required basis");
    }
    axis_kstride[pa] = kstrides[a];
  }
  return axis_kstride;
}

namespace {

template <typename F>
void for_each_broadcast(const DiagonalKernel& kernel, const WaveFunction& psi, F&& f) {
  const auto axis_kstride = broadcast_plan(kernel, psi);
  const std::size_t rank = psi.rank();
  std::vector<std::size_t> dims(rank), strides(rank);
  for (std::size_t a = 0; a < rank; ++a) {
    dims[a] = static_cast<std::size_t>(psi.axis(a).grid.n);
    strides[a] = psi.stride(a);
  }
  std::vector<std::size_t> idx(rank, 0);
  const std::size_t total = psi.size();
  std::size_t kidx = 0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(flat, kidx);
    // mixed-radix increment, fastest axis last
    for (std::size_t a = rank; a-- > 0;) {
      ++idx[a];
      kidx += axis_kstride[a];
      if (idx[a] < dims[a]) break;
      kidx -= axis_kstride[a] * dims[a];
      idx[a] = 0;
    }
  }
}

}  // namespace

void apply_diagonal_in_place(const DiagonalKernel& kernel, WaveFunction& psi) {
  auto& amp = psi.amplitudes();
  const auto& vals = kernel.values;
  for_each_broadcast(kernel, psi,
                     [&](std::size_t flat, std::size_t kidx) { amp[flat] *= vals[kidx]; });
}

WaveFunction apply_diagonal(const DiagonalKernel& kernel, const WaveFunction& psi) {
  WaveFunction out = psi;
  apply_diagonal_in_place(kernel, out);
  return out;
}

cplx expectation(const DiagonalKernel& kernel, const WaveFunction& psi) {
  const auto& amp = psi.amplitudes();
  const auto& vals = kernel.values;
  cplx acc{0.0, 0.0};
  for_each_broadcast(kernel, psi, [&](std::size_t flat, std::size_t kidx) {
    acc += std::conj(amp[flat]) * vals[kidx] * amp[flat];
  });
  return acc * psi.measure();
}

}  // namespace qrfsim::num
