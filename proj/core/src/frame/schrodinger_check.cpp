#include "qrfsim/frame/schrodinger_check.hpp"

#include <cmath>

#include "qrfsim/alg/builders.hpp"
#include "qrfsim/errors.hpp"
#include "qrfsim/num/kernel.hpp"
#include "qrfsim/num/spectral.hpp"
#include "qrfsim/num/trotter.hpp"
#include "qrfsim/num/wavefunction.hpp"

namespace qrfsim::frame {

namespace {

double eval_params(const alg::Term& t, const model::ModelParams& params) {
  if (!t.coeff.im.is_zero()) {
    throw ContractError("schrodinger lowering: complex coefficient " + t.str());
  }
  if (t.params.hbar != 0) {
    throw ContractError("schrodinger lowering: stray hbar power in " + t.str());
  }
  double v = t.coeff.re.to_double() * std::pow(params.c, t.params.c);
  for (const auto& [p, e] : t.params.mass) {
    if (p != 1) throw ContractError("schrodinger lowering: unexpected mass label");
    v *= std::pow(params.mass(1), e);
  }
  return v;
}

// Lowers the truncated single-particle generator expression to a momentum
// polynomial and a Phi-proportional potential coefficient.
struct Lowered {
  std::vector<std::pair<int, double>> momentum_poly;  // (power, coefficient)
  double potential_coeff = 0.0;                       // times Phi(x - q_M)
};

Lowered lower_single_particle(const alg::OperatorExpr& expr,
                              const model::ModelParams& params) {
  using M = alg::ModelAlgebra;
  Lowered out;
  for (const auto& t : expr.terms()) {
    if (!t.pos.empty()) {
      throw ContractError("schrodinger lowering: bare position factor in " + t.str());
    }
    if (t.funcs.empty()) {
      int power = 0;
      for (const auto& [sym, e] : t.mom.factors) {
        if (sym != M::mom(1)) {
          throw ContractError("schrodinger lowering: unexpected symbol in " + t.str());
        }
        power = e;
      }
      out.momentum_poly.emplace_back(power, eval_params(t, params));
    } else if (t.funcs.size() == 1 && t.mom.empty() &&
               t.funcs[0].family == alg::FuncFamily::Potential &&
               t.funcs[0].deriv == 0 && t.funcs[0].power == 1) {
      out.potential_coeff += eval_params(t, params);
    } else {
      throw ContractError("schrodinger lowering: unsupported term " + t.str());
    }
  }
  return out;
}

}  // namespace

SchrodingerCheckReport schrodinger_limit_check(const SchrodingerCheckConfig& cfg) {
  cfg.params.validate();
  if (cfg.params.n_particles() != 1) {
    throw ConfigError("schrodinger_limit_check: exactly one particle");
  }
  const double m = cfg.params.mass(1);
  const double c = cfg.params.c;

  // --- side A: constraint-derived kernels via the symbolic layer ---
  alg::ModelAlgebra algebra;
  algebra.n_particles = 1;
  alg::ParamPow cpow;
  cpow.c = 1;
  const auto generator =
      truncate(algebra.g00_pow(alg::ModelAlgebra::rel_pos(1), alg::Rational(1, 2)) *
                   algebra.omega(1),
               algebra.rule)
          .scaled(alg::CRational(alg::Rational(1)), cpow);
  auto lowered = lower_single_particle(generator, cfg.params);
  if (!cfg.quartic_constraint_side) {
    std::erase_if(lowered.momentum_poly, [](const auto& pc) { return pc.first >= 4; });
  }

  num::WaveFunction psi0(
      {num::Axis{cfg.grid, "x", num::Basis::Position}},
      num::gaussian_profile(cfg.grid, cfg.packet_center, cfg.packet_width, cfg.packet_k0));

  num::DiagonalKernel kinA;
  kinA.name = "constraint_kinetic";
  kinA.acts_on = {"x"};
  kinA.basis_required = {num::Basis::Momentum};
  for (int i = 0; i < cfg.grid.n; ++i) {
    const double k = cfg.grid.conjugate_point(i);
    double v = 0.0;
    for (const auto& [power, coeff] : lowered.momentum_poly) v += coeff * std::pow(k, power);
    kinA.values.push_back(num::cplx{v, 0.0});
  }
  num::DiagonalKernel potA;
  potA.name = "constraint_potential";
  potA.acts_on = {"x"};
  potA.basis_required = {num::Basis::Position};
  for (int i = 0; i < cfg.grid.n; ++i) {
    const double x = cfg.grid.point(i);
    potA.values.push_back(
        num::cplx{lowered.potential_coeff * model::potential(x - cfg.q_M, cfg.params), 0.0});
  }
  const auto planA = num::make_strang_plan(cfg.dtau, {potA, kinA}, psi0);

  // --- side B: hand-coded reference propagator (kinetic-first splitting) ---
  std::vector<num::cplx> half_kin_phase(static_cast<std::size_t>(cfg.grid.n));
  std::vector<num::cplx> full_pot_phase(static_cast<std::size_t>(cfg.grid.n));
  for (int i = 0; i < cfg.grid.n; ++i) {
    const double k = cfg.grid.conjugate_point(i);
    double e = m * c * c + k * k / (2.0 * m);
    if (cfg.quartic_reference_side) e -= std::pow(k, 4) / (8.0 * m * m * m * c * c);
    half_kin_phase[static_cast<std::size_t>(i)] = std::polar(1.0, -e * cfg.dtau / 2.0);
    const double x = cfg.grid.point(i);
    full_pot_phase[static_cast<std::size_t>(i)] =
        std::polar(1.0, -m * model::potential(x - cfg.q_M, cfg.params) * cfg.dtau);
  }
  auto step_reference = [&](num::WaveFunction& psi, long nsteps) {
    for (long s = 0; s < nsteps; ++s) {
      num::toggle_axis_basis(psi, 0);
      for (int i = 0; i < cfg.grid.n; ++i) {
        psi.amplitudes()[static_cast<std::size_t>(i)] *= half_kin_phase[static_cast<std::size_t>(i)];
      }
      num::toggle_axis_basis(psi, 0);
      for (int i = 0; i < cfg.grid.n; ++i) {
        psi.amplitudes()[static_cast<std::size_t>(i)] *= full_pot_phase[static_cast<std::size_t>(i)];
      }
      num::toggle_axis_basis(psi, 0);
      for (int i = 0; i < cfg.grid.n; ++i) {
        psi.amplitudes()[static_cast<std::size_t>(i)] *= half_kin_phase[static_cast<std::size_t>(i)];
      }
      num::toggle_axis_basis(psi, 0);
    }
  };

  SchrodingerCheckReport report;
  const long total_steps = std::lround(cfg.total_time / cfg.dtau);
  const long per_sample = std::max(1L, total_steps / cfg.n_samples);
  num::WaveFunction a = psi0, b = psi0;
  const double x_start = num::axis_moments(a, 0).mean;
  long done = 0;
  while (done < total_steps) {
    const long chunk = std::min(per_sample, total_steps - done);
    a = num::trotter_evolve(planA, a, chunk);
    step_reference(b, chunk);
    done += chunk;
    report.sample_times.push_back(static_cast<double>(done) * cfg.dtau);
    const double d = num::l2_distance(a, b);
    report.l2_at_samples.push_back(d);
    report.max_l2 = std::max(report.max_l2, d);
  }
  report.l2_final = report.l2_at_samples.empty() ? 0.0 : report.l2_at_samples.back();
  report.travel_spacings = std::abs(num::axis_moments(a, 0).mean - x_start) / cfg.grid.spacing;
  return report;
}

}  // namespace qrfsim::frame
