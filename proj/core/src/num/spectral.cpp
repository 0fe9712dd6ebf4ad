#include "qrfsim/num/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>

#include "qrfsim/errors.hpp"

namespace qrfsim::num {

namespace {

// Plan cache keyed by transform length. Plans are created once under a lock
// (FFTW planning is not thread-safe) and executed on caller buffers.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> dummy(static_cast<std::size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(dummy.data());
  PlanPair p;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
  p.bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
  return cache.emplace(n, p).first->second;
}

void run_fft(cplx* line, int n, bool forward) {
  auto& plans = plans_for(n);
  auto* buf = reinterpret_cast<fftw_complex*>(line);
  fftw_execute_dft(forward ? plans.fwd : plans.bwd, buf, buf);
}

}  // namespace

void toggle_axis_basis(WaveFunction& psi, std::size_t axis) {
  const Axis ax = psi.axis(axis);
  const int n = ax.grid.n;
  const bool to_momentum = ax.basis == Basis::Position;
  const double dx = ax.grid.spacing;
  const double dk = ax.grid.conjugate_spacing();
  const double x0 = ax.grid.offset;
  const double scale =
      (to_momentum ? dx : dk) / std::sqrt(2.0 * std::numbers::pi);

  // Offset phases: exp(-i k_m x0) after a forward transform, exp(+i k_m x0)
  // before a backward one. The (-1)^j twist centers the conjugate grid.
  std::vector<cplx> offset_phase(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double km = ax.grid.conjugate_point(m);
    offset_phase[static_cast<std::size_t>(m)] =
        std::polar(1.0, (to_momentum ? -1.0 : 1.0) * km * x0);
  }

  const std::size_t stride = psi.stride(axis);
  const std::size_t total = psi.size();
  const std::size_t lines = total / static_cast<std::size_t>(n);
  auto& amp = psi.amplitudes();

  std::vector<cplx> scratch(static_cast<std::size_t>(n));
  for (std::size_t line = 0; line < lines; ++line) {
    const std::size_t base = (line / stride) * stride * static_cast<std::size_t>(n) +
                             (line % stride);
    if (to_momentum) {
      for (int j = 0; j < n; ++j) {
        const cplx v = amp[base + static_cast<std::size_t>(j) * stride];
        scratch[static_cast<std::size_t>(j)] = (j & 1) ? -v : v;
      }
      run_fft(scratch.data(), n, true);
      for (int m = 0; m < n; ++m) {
        amp[base + static_cast<std::size_t>(m) * stride] =
            scale * offset_phase[static_cast<std::size_t>(m)] *
            scratch[static_cast<std::size_t>(m)];
      }
    } else {
      for (int m = 0; m < n; ++m) {
        scratch[static_cast<std::size_t>(m)] =
            amp[base + static_cast<std::size_t>(m) * stride] *
            offset_phase[static_cast<std::size_t>(m)];
      }
      run_fft(scratch.data(), n, false);
      for (int j = 0; j < n; ++j) {
        const cplx v = scale * scratch[static_cast<std::size_t>(j)];
        amp[base + static_cast<std::size_t>(j) * stride] = (j & 1) ? -v : v;
      }
    }
  }
  psi.set_basis(axis, to_momentum ? Basis::Momentum : Basis::Position);
}

WaveFunction to_conjugate_basis(const WaveFunction& psi, const std::string& axis_label) {
  WaveFunction out = psi;
  toggle_axis_basis(out, out.axis_index(axis_label));
  return out;
}

}  // namespace qrfsim::num
