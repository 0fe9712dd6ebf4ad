#include "qrfsim/num/trotter.hpp"

#include <cmath>

#include "qrfsim/errors.hpp"
#include "qrfsim/num/spectral.hpp"

namespace qrfsim::num {

namespace {

void insert_toggles_for(const DiagonalKernel& k, const WaveFunction& proto,
                        std::vector<Basis>& bases, std::vector<PlanOp>& seq) {
  for (std::size_t a = 0; a < k.acts_on.size(); ++a) {
    const std::size_t pa = proto.axis_index(k.acts_on[a]);
    if (bases[pa] != k.basis_required[a]) {
      seq.push_back(ToggleBasisOp{k.acts_on[a]});
      bases[pa] = k.basis_required[a];
    }
  }
}

}  // namespace

TrotterPlan make_strang_plan(double dtau, const std::vector<DiagonalKernel>& kernels,
                             const WaveFunction& prototype) {
  if (kernels.empty()) throw ContractError("make_strang_plan: no kernels");
  TrotterPlan plan;
  plan.dtau = dtau;
  std::vector<Basis> bases;
  for (std::size_t a = 0; a < prototype.rank(); ++a) bases.push_back(prototype.basis(a));

  const std::size_t m = kernels.size();
  for (std::size_t i = 0; i < m; ++i) {
    insert_toggles_for(kernels[i], prototype, bases, plan.sequence);
    plan.sequence.push_back(PhaseOp{kernels[i], i + 1 == m ? 1.0 : 0.5});
  }
  for (std::size_t i = m - 1; i-- > 0;) {
    insert_toggles_for(kernels[i], prototype, bases, plan.sequence);
    plan.sequence.push_back(PhaseOp{kernels[i], 0.5});
  }
  // restore starting bases so the cycle composes
  for (std::size_t a = 0; a < prototype.rank(); ++a) {
    if (bases[a] != prototype.basis(a)) {
      plan.sequence.push_back(ToggleBasisOp{prototype.axis(a).label});
      bases[a] = prototype.basis(a);
    }
  }
  return plan;
}

WaveFunction trotter_evolve(const TrotterPlan& plan, const WaveFunction& psi,
                            long n_steps) {
  // Precompute phase tables exp(-i v w dtau); kernels must be real (Hermitian
  // generator) so each factor is unitary.
  struct CompiledPhase {
    DiagonalKernel phase;
  };
  std::vector<CompiledPhase> phases;
  std::vector<const CompiledPhase*> order;
  order.reserve(plan.sequence.size());
  phases.reserve(plan.sequence.size());

  for (const auto& op : plan.sequence) {
    if (const auto* p = std::get_if<PhaseOp>(&op)) {
      if (!p->kernel.is_real(1e-14)) {
        throw ContractError("trotter_evolve: kernel '" + p->kernel.name +
                            "' is not real-valued");
      }
      CompiledPhase cp;
      cp.phase = p->kernel;
      for (auto& v : cp.phase.values) {
        v = std::polar(1.0, -v.real() * p->weight * plan.dtau);
      }
      phases.push_back(std::move(cp));
    }
  }

  WaveFunction state = psi;
  for (long step = 0; step < n_steps; ++step) {
    std::size_t next_phase = 0;
    for (const auto& op : plan.sequence) {
      if (std::holds_alternative<ToggleBasisOp>(op)) {
        const auto& t = std::get<ToggleBasisOp>(op);
        toggle_axis_basis(state, state.axis_index(t.axis));
      } else {
        apply_diagonal_in_place(phases[next_phase].phase, state);
        ++next_phase;
      }
    }
  }
  return state;
}

WaveFunction apply_generator(const std::vector<DiagonalKernel>& kernels,
                             const WaveFunction& psi) {
  WaveFunction out = WaveFunction::zeros(psi.axes());
  for (const auto& k : kernels) {
    WaveFunction tmp = psi;
    std::vector<std::size_t> toggled;
    for (std::size_t a = 0; a < k.acts_on.size(); ++a) {
      const std::size_t pa = tmp.axis_index(k.acts_on[a]);
      if (tmp.basis(pa) != k.basis_required[a]) {
        toggle_axis_basis(tmp, pa);
        toggled.push_back(pa);
      }
    }
    apply_diagonal_in_place(k, tmp);
    for (auto it = toggled.rbegin(); it != toggled.rend(); ++it) {
      toggle_axis_basis(tmp, *it);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.amplitudes()[i] += tmp.amplitudes()[i];
    }
  }
  return out;
}

double generator_expectation(const std::vector<DiagonalKernel>& kernels,
                             const WaveFunction& psi) {
  double acc = 0.0;
  for (const auto& k : kernels) {
    WaveFunction tmp = psi;
    for (std::size_t a = 0; a < k.acts_on.size(); ++a) {
      const std::size_t pa = tmp.axis_index(k.acts_on[a]);
      if (tmp.basis(pa) != k.basis_required[a]) toggle_axis_basis(tmp, pa);
    }
    acc += expectation(k, tmp).real();
  }
  return acc;
}

}  // namespace qrfsim::num
