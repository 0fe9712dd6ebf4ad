#include "qrfsim/alg/builders.hpp"

namespace qrfsim::alg {

namespace {

Rational binom(const Rational& s, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) {
    r *= (s - Rational(i)) / Rational(i + 1);
  }
  return r;
}

ParamPow inv_c(int e) {
  ParamPow p;
  p.c = -e;
  return p;
}

ParamPow inv_mass_c(ParticleId m, int em, int ec) {
  ParamPow p;
  p.c = -ec;
  p.mul_mass(m, -em);
  return p;
}

}  // namespace

LinArg ModelAlgebra::rel_pos(ParticleId p) {
  LinArg a;
  a.add(x(p), Rational(1));
  a.add(x(kMass), Rational(-1));
  return a;
}

LinArg ModelAlgebra::at(SymbolId s) {
  LinArg a;
  a.add(s, Rational(1));
  return a;
}

std::vector<ParticleId> ModelAlgebra::particles() const {
  std::vector<ParticleId> out;
  for (ParticleId p = 1; p <= n_particles; ++p) out.push_back(p);
  return out;
}

std::vector<ParticleId> ModelAlgebra::others(ParticleId frame) const {
  std::vector<ParticleId> out;
  for (ParticleId p = 1; p <= n_particles; ++p) {
    if (p != frame) out.push_back(p);
  }
  return out;
}

OperatorExpr ModelAlgebra::g00_pow(const LinArg& arg, const Rational& s) const {
  // (1 + 2 Phi/c^2)^s, Phi carrying one eps_g per factor
  OperatorExpr sum = OperatorExpr::constant(CRational(Rational(1)));
  OperatorExpr u = OperatorExpr::func(FuncFamily::Potential, 0, arg, Grading{1, 0})
                       .scaled(CRational(Rational(2)), inv_c(2));
  OperatorExpr upow = u;
  for (int k = 1; k <= rule.max_g; ++k) {
    sum = sum + upow.scaled(CRational(binom(s, k)));
    if (k < rule.max_g) upow = upow * u;
  }
  return truncate(sum, rule);
}

OperatorExpr ModelAlgebra::log_sqrt_g00_inv(const LinArg& arg) const {
  // -(1/2) log(1+u) = -(1/2)(u - u^2/2 + ...), u = 2 Phi/c^2
  OperatorExpr u = OperatorExpr::func(FuncFamily::Potential, 0, arg, Grading{1, 0})
                       .scaled(CRational(Rational(2)), inv_c(2));
  OperatorExpr sum = OperatorExpr::zero();
  OperatorExpr upow = u;
  for (int k = 1; k <= rule.max_g; ++k) {
    const Rational coeff = Rational(k % 2 == 1 ? -1 : 1, 2 * k);
    sum = sum + upow.scaled(CRational(coeff));
    if (k < rule.max_g) upow = upow * u;
  }
  return truncate(sum, rule);
}

OperatorExpr ModelAlgebra::gamma_pow(const OperatorExpr& momentum, ParticleId mass_of,
                                     const Rational& s) const {
  OperatorExpr u = (momentum * momentum).scaled(CRational(Rational(1)),
                                                inv_mass_c(mass_of, 2, 2));
  OperatorExpr sum = OperatorExpr::constant(CRational(Rational(1)));
  OperatorExpr upow = u;
  const int kmax = rule.max_p / 2;
  for (int k = 1; k <= kmax; ++k) {
    sum = sum + upow.scaled(CRational(binom(s, k)));
    if (k < kmax) upow = upow * u;
  }
  return truncate(sum, rule);
}

OperatorExpr ModelAlgebra::omega(ParticleId p) const {
  ParamPow mc;
  mc.c = 1;
  mc.mul_mass(p, 1);
  return gamma_pow(sym(mom(p)), p, Rational(1, 2)).scaled(CRational(Rational(1)), mc);
}

OperatorExpr ModelAlgebra::omega_quadratic(ParticleId p) const {
  ParamPow mc;
  mc.c = 1;
  mc.mul_mass(p, 1);
  OperatorExpr rest = OperatorExpr::constant(CRational(Rational(1))).scaled(
      CRational(Rational(1)), mc);
  OperatorExpr kin = (sym(mom(p)) * sym(mom(p)))
                         .scaled(CRational(Rational(1, 2)), inv_mass_c(p, 1, 1));
  return rest + kin;
}

OperatorExpr ModelAlgebra::delta_factor(const LinArg& pos_arg,
                                        const OperatorExpr& momentum,
                                        ParticleId mass_of) const {
  return truncate(g00_pow(pos_arg, Rational(1, 2)) *
                      gamma_pow(momentum, mass_of, Rational(-1, 2)),
                  rule);
}

OperatorExpr ModelAlgebra::kick_window(ParticleId p) const {
  LinArg arg;
  arg.add(clock(p), Rational(1));
  arg.tau_star = Rational(-1);
  return OperatorExpr::func(FuncFamily::KickWindow, 0, arg, Grading{0, 0});
}

OperatorExpr ModelAlgebra::momentum_sum(bool include_mass, ParticleId exclude) const {
  OperatorExpr sum = OperatorExpr::zero();
  for (ParticleId p = 1; p <= n_particles; ++p) {
    if (p == exclude) continue;
    sum = sum + sym(mom(p));
  }
  if (include_mass) sum = sum + sym(mom(kMass));
  return sum;
}

ModelAlgebra::ConstraintSet ModelAlgebra::constraints_galilean() const {
  ConstraintSet cs;
  for (ParticleId p : particles()) {
    OperatorExpr kin = (sym(mom(p)) * sym(mom(p)))
                           .scaled(CRational(Rational(1, 2)), inv_mass_c(p, 1, 1));
    OperatorExpr C = sym(mom0(p)) - kin;
    cs.dispersion.push_back(C);
    cs.all.emplace_back("C_" + std::to_string(p), C);
  }
  cs.f0 = OperatorExpr::zero();
  for (ParticleId p : particles()) {
    cs.f0 = cs.f0 + sym(mom0(p)) + sym(energy(p)).scaled(CRational(Rational(1)), inv_c(1));
  }
  cs.f1 = momentum_sum(false);
  cs.all.emplace_back("f0", cs.f0);
  cs.all.emplace_back("f1", cs.f1);
  return cs;
}

ModelAlgebra::ConstraintSet ModelAlgebra::constraints_special_relativistic() const {
  ConstraintSet cs;
  for (ParticleId p : particles()) {
    OperatorExpr C = sym(mom0(p)) - omega(p);
    cs.dispersion.push_back(C);
    cs.all.emplace_back("C_" + std::to_string(p), C);
  }
  cs.f0 = OperatorExpr::zero();
  for (ParticleId p : particles()) {
    cs.f0 = cs.f0 + sym(mom0(p)) +
            truncate(gamma_pow(sym(mom(p)), p, Rational(-1, 2)) * sym(energy(p)), rule)
                .scaled(CRational(Rational(1)), inv_c(1));
  }
  cs.f1 = momentum_sum(false);
  cs.all.emplace_back("f0", cs.f0);
  cs.all.emplace_back("f1", cs.f1);
  return cs;
}

ModelAlgebra::ConstraintSet ModelAlgebra::constraints_newtonian() const {
  ConstraintSet cs;
  for (ParticleId p : particles()) {
    OperatorExpr C =
        truncate(g00_pow(rel_pos(p), Rational(-1, 2)) * sym(mom0(p)), rule) -
        omega_quadratic(p);
    cs.dispersion.push_back(C);
    cs.all.emplace_back("C_" + std::to_string(p), C);
  }
  cs.f0 = sym(mom0(kMass));
  for (ParticleId p : particles()) {
    cs.f0 = cs.f0 + sym(mom0(p)) +
            truncate(g00_pow(rel_pos(p), Rational(1, 2)) * sym(energy(p)), rule)
                .scaled(CRational(Rational(1)), inv_c(1));
  }
  cs.f1 = momentum_sum(true);
  cs.all.emplace_back("f0", cs.f0);
  cs.all.emplace_back("f1", cs.f1);
  return cs;
}

ModelAlgebra::ConstraintSet ModelAlgebra::constraints_full(bool with_measurement,
                                                           ParticleId measured) const {
  ConstraintSet cs;
  for (ParticleId p : particles()) {
    OperatorExpr C =
        truncate(g00_pow(rel_pos(p), Rational(-1, 2)) * sym(mom0(p)), rule) - omega(p);
    cs.dispersion.push_back(C);
    cs.all.emplace_back("C_" + std::to_string(p), C);
  }
  cs.f0 = sym(mom0(kMass));
  for (ParticleId p : particles()) {
    cs.f0 = cs.f0 +
            sym(mom0(p)) +
            truncate(delta_factor(rel_pos(p), sym(mom(p)), p) * sym(energy(p)), rule)
                .scaled(CRational(Rational(1)), inv_c(1));
  }
  if (with_measurement) {
    cs.f0 = cs.f0 + truncate(delta_factor(rel_pos(measured), sym(mom(measured)), measured) *
                                 kick_window(measured) * sym(kick(measured)),
                             rule)
                        .scaled(CRational(Rational(1)), inv_c(1));
  }
  cs.f1 = momentum_sum(true);
  cs.all.emplace_back(with_measurement ? "f0_Q" : "f0", cs.f0);
  cs.all.emplace_back("f1", cs.f1);
  return cs;
}

OperatorExpr ModelAlgebra::relational_hamiltonian(ParticleId frame) const {
  const OperatorExpr sum_mom = momentum_sum(true, frame);
  const OperatorExpr gamma_sum = gamma_pow(sum_mom, frame, Rational(1, 2));
  ParamPow cpow;
  cpow.c = 1;

  OperatorExpr h = OperatorExpr::zero();
  for (ParticleId i : others(frame)) {
    const OperatorExpr sqrt_gp = truncate(
        g00_pow(rel_pos(i), Rational(1, 2)) * g00_pow(at(x(kMass)), Rational(-1, 2)),
        rule);
    const OperatorExpr bracket =
        omega(i).scaled(CRational(Rational(1)), cpow) +
        truncate(gamma_pow(sym(mom(i)), i, Rational(-1, 2)) * sym(energy(i)), rule);
    h = h + truncate(gamma_sum * sqrt_gp * bracket, rule);
  }
  // source-mass generator term c gamma_sum sqrt(g^00(xM)) k0_M
  h = h + truncate(gamma_sum * g00_pow(at(x(kMass)), Rational(-1, 2)) *
                       sym(mom0(kMass)),
                   rule)
              .scaled(CRational(Rational(1)), cpow);
  // frame rest energy m_f c^2 gamma_sum^2 (exact, quadratic)
  ParamPow mc2;
  mc2.c = 2;
  mc2.mul_mass(frame, 1);
  h = h + truncate(gamma_pow(sum_mom, frame, Rational(1)), rule)
              .scaled(CRational(Rational(1)), mc2);
  return h;
}

namespace {

ParamPow i_over_hbar_params() {
  ParamPow p;
  p.hbar = -1;
  return p;
}

}  // namespace

FlowSequence ModelAlgebra::t_full(ParticleId frame, bool with_measurement,
                                  ParticleId measured) const {
  // rightmost factor: exp((i/hbar) x0_frame (f0 - p0_frame))
  OperatorExpr f0_rest = sym(mom0(kMass));
  for (ParticleId p : particles()) {
    if (p != frame) f0_rest = f0_rest + sym(mom0(p));
    f0_rest = f0_rest +
              truncate(delta_factor(rel_pos(p), sym(mom(p)), p) * sym(energy(p)), rule)
                  .scaled(CRational(Rational(1)), inv_c(1));
  }
  if (with_measurement) {
    f0_rest = f0_rest +
              truncate(delta_factor(rel_pos(measured), sym(mom(measured)), measured) *
                           kick_window(measured) * sym(kick(measured)),
                       rule)
                  .scaled(CRational(Rational(1)), inv_c(1));
  }
  OperatorExpr gen_time =
      (sym(x0(frame)) * f0_rest).scaled(CRational::i(), i_over_hbar_params());

  OperatorExpr gen_trans = (sym(x(frame)) * momentum_sum(true, frame))
                               .scaled(CRational::i(), i_over_hbar_params());

  // Dilation to the locally inertial frame. The generator carries
  // log sqrt(g^00(x_M)); with this sign the conjugation table of the paper
  // (x0 -> sqrt(g^00) q0, p0 -> sqrt(g00) k0) comes out of the flow.
  OperatorExpr lambda = log_sqrt_g00_inv(at(x(kMass)));
  OperatorExpr dil_sum = OperatorExpr::zero();
  for (ParticleId p : particles()) {
    dil_sum = dil_sum + sym(x0(p)) * sym(mom0(p));
  }
  OperatorExpr gen_dil =
      (lambda * dil_sum).scaled(CRational::i(), i_over_hbar_params()) +
      lambda.scaled(CRational(Rational(n_particles, 2)));

  FlowSequence seq;
  seq.generators = {gen_time, gen_trans, gen_dil};
  return seq;
}

FlowSequence ModelAlgebra::t_galilean(ParticleId frame) const {
  OperatorExpr f0_rest = OperatorExpr::zero();
  for (ParticleId p : particles()) {
    if (p != frame) f0_rest = f0_rest + sym(mom0(p));
    f0_rest = f0_rest + sym(energy(p)).scaled(CRational(Rational(1)), inv_c(1));
  }
  OperatorExpr gen_time =
      (sym(x0(frame)) * f0_rest).scaled(CRational::i(), i_over_hbar_params());
  OperatorExpr gen_trans = (sym(x(frame)) * momentum_sum(false, frame))
                               .scaled(CRational::i(), i_over_hbar_params());
  FlowSequence seq;
  seq.generators = {gen_time, gen_trans};
  return seq;
}

FlowSequence ModelAlgebra::t_special_relativistic(ParticleId frame) const {
  OperatorExpr f0_rest = OperatorExpr::zero();
  for (ParticleId p : particles()) {
    if (p != frame) f0_rest = f0_rest + sym(mom0(p));
    f0_rest = f0_rest +
              truncate(gamma_pow(sym(mom(p)), p, Rational(-1, 2)) * sym(energy(p)), rule)
                  .scaled(CRational(Rational(1)), inv_c(1));
  }
  OperatorExpr gen_time =
      (sym(x0(frame)) * f0_rest).scaled(CRational::i(), i_over_hbar_params());
  OperatorExpr gen_trans = (sym(x(frame)) * momentum_sum(false, frame))
                               .scaled(CRational::i(), i_over_hbar_params());
  FlowSequence seq;
  seq.generators = {gen_time, gen_trans};
  return seq;
}

FlowSequence ModelAlgebra::t_swap(ParticleId from_frame, ParticleId to_frame) const {
  return t_full(from_frame).inverse().then(t_full(to_frame));
}

}  // namespace qrfsim::alg
