#include "qrfsim/frame/swap_check.hpp"

#include <cmath>

#include "qrfsim/alg/flow.hpp"
#include "qrfsim/alg/tables.hpp"
#include "qrfsim/frame/hamiltonian.hpp"
#include "qrfsim/frame/history.hpp"
#include "qrfsim/num/spectral.hpp"

namespace qrfsim::frame {

namespace {

using M = alg::ModelAlgebra;

// Transformed constraint forms in base symbols, frame f, other particle i:
//   f0 -> sqrt(g00(xM)) p0_f,   f1 -> p_f,
//   C'_i = sqrt(g'^00(q_i,q_M)) k0_i - omega_i
alg::OperatorExpr transformed_f0(const M& m, int f) {
  return m.g00_pow(M::at(M::x(alg::kMass)), alg::Rational(1, 2)) *
         M::sym(M::mom0(f));
}

alg::OperatorExpr transformed_dispersion(const M& m, int i) {
  return truncate(m.g00_pow(M::rel_pos(i), alg::Rational(-1, 2)) *
                          m.g00_pow(M::at(M::x(alg::kMass)), alg::Rational(1, 2)) *
                          M::sym(M::mom0(i)) -
                      m.omega(i),
                  m.rule);
}

// T_f C_f T_f^dagger: the frame particle's own constraint after the frame
// change, solved against the other generators (the k0_f combination, the
// metric-weighted internal energies, and the frame dispersion at the
// momentum balance p_f - sum_i p_i - p_M).
alg::OperatorExpr solved_frame_constraint(const M& m, int f) {
  alg::ParamPow invc;
  invc.c = -1;
  alg::OperatorExpr expr = M::sym(M::mom0(f));
  for (int i : m.others(f)) {
    const auto delta_prime =
        truncate(m.g00_pow(M::rel_pos(i), alg::Rational(1, 2)) *
                     m.g00_pow(M::at(M::x(alg::kMass)), alg::Rational(-1, 2)) *
                     m.gamma_pow(M::sym(M::mom(i)), i, alg::Rational(-1, 2)),
                 m.rule);
    expr = expr - M::sym(M::mom0(i)) -
           truncate(delta_prime * M::sym(M::energy(i)), m.rule)
               .scaled(alg::CRational(alg::Rational(1)), invc);
  }
  expr = expr - truncate(m.g00_pow(M::at(M::x(alg::kMass)), alg::Rational(-1, 2)) *
                             M::sym(M::mom0(alg::kMass)),
                         m.rule);
  const auto balance = M::sym(M::mom(f)) - m.momentum_sum(true, f);
  alg::ParamPow mc;
  mc.c = 1;
  mc.mul_mass(f, 1);
  expr = expr - truncate(m.gamma_pow(balance, f, alg::Rational(1, 2)), m.rule)
                    .scaled(alg::CRational(alg::Rational(1)), mc);
  expr = expr - truncate(m.gamma_pow(balance, f, alg::Rational(-1, 2)) *
                             M::sym(M::energy(f)),
                         m.rule)
                    .scaled(alg::CRational(alg::Rational(1)), invc);
  return truncate(expr, m.rule);
}

}  // namespace

SwapCheckReport qrf_swap_check(const SwapCheckConfig& cfg, double tolerance) {
  SwapCheckReport report;

  // ---------- symbolic checks ----------
  M m;
  m.n_particles = 2;
  const auto rule = alg::GradingRule::transform();
  const auto t12 = m.t_swap(1, 2);

  auto check_map = [&](const alg::OperatorExpr& frame1_form,
                       const alg::OperatorExpr& frame2_form, const std::string& name) {
    const auto moved = conjugate_by_sequence(t12, truncate(frame1_form, rule), rule);
    const auto target = truncate(frame2_form, rule);
    const auto diff = truncate(moved - target, rule);
    if (!diff.is_zero()) {
      report.constraint_residuals.push_back(name + ": " + diff.str());
    }
  };
  check_map(transformed_f0(m, 1), transformed_f0(m, 2), "f0");
  check_map(M::sym(M::mom(1)), M::sym(M::mom(2)), "f1");
  // particle 2 becomes the frame: its dispersion constraint maps onto the
  // solved frame-constraint combination of frame 2
  check_map(transformed_dispersion(m, 2), solved_frame_constraint(m, 2), "C'_frame");
  {
    // spectator dispersion constraints are form-invariant (N = 3)
    M m3;
    m3.n_particles = 3;
    const auto t12_3 = m3.t_swap(1, 2);
    const auto spectator = transformed_dispersion(m3, 3);
    const auto moved = conjugate_by_sequence(t12_3, truncate(spectator, rule), rule);
    const auto diff = truncate(moved - truncate(spectator, rule), rule);
    if (!diff.is_zero()) {
      report.constraint_residuals.push_back("C'_spectator: " + diff.str());
    }
  }
  report.constraints_map_ok = report.constraint_residuals.empty();

  const auto h1 = m.relational_hamiltonian(1);
  const auto h2 = m.relational_hamiltonian(2);
  report.hamiltonian_swap_ok = (h2 == swap_labels(h1, 1, 2));

  report.involution_ok = true;
  const auto t21 = m.t_swap(2, 1);
  for (const auto& line : expected_table(m, alg::ConjugationTable::T12)) {
    const auto there =
        conjugate_by_sequence(t12, alg::OperatorExpr::symbol(line.lhs), rule);
    const auto back = conjugate_by_sequence(t21, there, rule);
    if (!(back == truncate(alg::OperatorExpr::symbol(line.lhs), rule))) {
      report.involution_ok = false;
    }
  }

  // ---------- numeric mirror check (galilean, m1 = m2) ----------
  model::ModelParams params;
  params.masses = {cfg.mass, cfg.mass};
  params.GM = 0.0;

  auto run_frame = [&](int frame, double center, double k0) {
    const std::string label = frame == 1 ? "q2" : "q1";
    num::WaveFunction psi({num::Axis{cfg.grid, label, num::Basis::Position}},
                          num::gaussian_profile(cfg.grid, center, cfg.packet_width, k0));
    AxisLayout layout;
    layout.entries.push_back({label, AxisRole::RelativePosition, 3 - frame});
    const auto spec = build_hamiltonian(model::Regime::Galilean, params, 0.0, psi,
                                        layout, frame);
    num::Grid1D tau_grid{cfg.n_snapshots, cfg.tau_max / cfg.n_snapshots, 0.0};
    EvolveOptions opts;
    opts.dtau = cfg.dtau;
    return evolve_history(psi, spec, tau_grid, opts);
  };

  const auto h_frame1 = run_frame(1, cfg.packet_center, cfg.packet_k0);
  const auto h_frame2 = run_frame(2, -cfg.packet_center, -cfg.packet_k0);

  const int n = cfg.grid.n;
  double max_dev = 0.0;
  for (std::size_t s = 0; s < h_frame1.snapshots.size(); ++s) {
    for (const bool momentum_side : {false, true}) {
      num::WaveFunction a = h_frame1.snapshots[s];
      num::WaveFunction b = h_frame2.snapshots[s];
      if (momentum_side) {
        num::toggle_axis_basis(a, 0);
        num::toggle_axis_basis(b, 0);
      }
      const auto pa = num::marginal(a, 0);
      const auto pb = num::marginal(b, 0);
      for (int j = 0; j < n; ++j) {
        const int jm = (n - j) % n;
        max_dev = std::max(max_dev, std::abs(pa[static_cast<std::size_t>(j)] -
                                             pb[static_cast<std::size_t>(jm)]));
      }
    }
  }
  report.mirror_max_dev = max_dev;
  report.mirror_ok = max_dev < tolerance;
  return report;
}

}  // namespace qrfsim::frame
