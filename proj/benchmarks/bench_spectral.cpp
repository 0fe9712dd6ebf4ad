#include <benchmark/benchmark.h>

#include "qrfsim/frame/hamiltonian.hpp"
#include "qrfsim/num/spectral.hpp"
#include "qrfsim/num/trotter.hpp"

using namespace qrfsim;

namespace {

num::WaveFunction packet_2d(int nq, int nt) {
  const auto gq = num::make_uniform_grid(nq, 64.0, -32.0);
  const auto gt = num::make_uniform_grid(nt, 32.0, -16.0);
  num::WaveFunction psi(
      {num::Axis{gq, "q2", num::Basis::Position}, num::Axis{gt, "t2", num::Basis::Position}},
      std::vector<num::cplx>(static_cast<std::size_t>(nq) * nt));
  const auto pq = num::gaussian_profile(gq, 0.0, 2.0, 0.5);
  const auto pt = num::gaussian_profile(gt, 0.0, 1.0, 0.0);
  std::size_t idx = 0;
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < nt; ++j) psi.amplitudes()[idx++] = pq[i] * pt[j];
  }
  return psi;
}

void BM_axis_toggle(benchmark::State& state) {
  auto psi = packet_2d(static_cast<int>(state.range(0)), 64);
  for (auto _ : state) {
    num::toggle_axis_basis(psi, 0);
    num::toggle_axis_basis(psi, 0);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * psi.size() * 2);
}
BENCHMARK(BM_axis_toggle)->Arg(128)->Arg(512)->Arg(2048);

void BM_split_step(benchmark::State& state) {
  auto psi = packet_2d(static_cast<int>(state.range(0)), 64);
  model::ModelParams params;
  params.masses = {1.0, 2.0};
  params.c = 4.0;
  frame::AxisLayout layout;
  layout.entries = {{"q2", frame::AxisRole::RelativePosition, 2},
                    {"t2", frame::AxisRole::Clock, 2}};
  const auto spec = frame::build_hamiltonian(model::Regime::SpecialRelativistic, params,
                                             0.0, psi, layout);
  const auto plan = num::make_strang_plan(1e-3, spec.kernels, psi);
  for (auto _ : state) {
    psi = num::trotter_evolve(plan, psi, 8);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * 8 * psi.size());
}
BENCHMARK(BM_split_step)->Arg(128)->Arg(512);

}  // namespace
