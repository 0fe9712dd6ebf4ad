#pragma once

#include <vector>

#include "qrfsim/alg/expr.hpp"
#include "qrfsim/alg/flow.hpp"

namespace qrfsim::alg {

/// Symbolic model for N particles (labels 1..N) plus the source mass M.
/// Coefficient functions (sqrt(g00), gamma factors, the worldline factor) are
/// series-expanded only as far as the grading rule retains; normal forms stay
/// finite and equality decidable.
struct ModelAlgebra {
  int n_particles = 2;
  GradingRule rule = GradingRule::regime();

  // -- symbols ---------------------------------------------------------
  static SymbolId x(ParticleId p) { return symbol_id(SymbolKind::PosSpace, p); }
  static SymbolId x0(ParticleId p) { return symbol_id(SymbolKind::PosTime, p); }
  static SymbolId clock(ParticleId p) { return symbol_id(SymbolKind::ClockTime, p); }
  static SymbolId mom(ParticleId p) { return symbol_id(SymbolKind::MomSpace, p); }
  static SymbolId mom0(ParticleId p) { return symbol_id(SymbolKind::MomTime, p); }
  static SymbolId energy(ParticleId p) { return symbol_id(SymbolKind::ClockEnergy, p); }
  static SymbolId kick(ParticleId p) { return symbol_id(SymbolKind::KickOp, p); }

  static OperatorExpr sym(SymbolId s) { return OperatorExpr::symbol(s); }

  /// x_I - x_M
  static LinArg rel_pos(ParticleId p);
  /// single-symbol argument
  static LinArg at(SymbolId s);

  std::vector<ParticleId> particles() const;
  std::vector<ParticleId> others(ParticleId frame) const;  // particles != frame

  // -- series builders (expanded to the rule's caps) --------------------
  /// (1 + 2 Phi(arg)/c^2)^s, i.e. g_00(arg)^s; s = -1/2 gives sqrt(g^00).
  OperatorExpr g00_pow(const LinArg& arg, const Rational& s) const;
  /// log sqrt(g^00(arg)) = -(1/2) log(1 + 2 Phi(arg)/c^2)
  OperatorExpr log_sqrt_g00_inv(const LinArg& arg) const;
  /// (1 + P^2/(m^2 c^2))^s for a momentum combination P and mass label m.
  OperatorExpr gamma_pow(const OperatorExpr& momentum, ParticleId mass_of,
                         const Rational& s) const;
  /// omega_p = m c (1 + p^2/m^2c^2)^{1/2} (momentum units)
  OperatorExpr omega(ParticleId p) const;
  /// quadratic expansion m c + p^2/(2 m c) of omega_p (slow regimes)
  OperatorExpr omega_quadratic(ParticleId p) const;
  /// Delta(arg, P) = sqrt(g_00(arg)) (1 + P^2/m^2c^2)^{-1/2}
  OperatorExpr delta_factor(const LinArg& pos_arg, const OperatorExpr& momentum,
                            ParticleId mass_of) const;
  /// regularized delta window w(T_p - tau2*)
  OperatorExpr kick_window(ParticleId p) const;

  OperatorExpr momentum_sum(bool include_mass, ParticleId exclude = -1) const;

  // -- constraint sets ---------------------------------------------------
  struct ConstraintSet {
    std::vector<std::pair<std::string, OperatorExpr>> all;  // C_1..C_N, f0, f1
    OperatorExpr f0;
    OperatorExpr f1;
    std::vector<OperatorExpr> dispersion;  // C_I
  };

  ConstraintSet constraints_galilean() const;
  ConstraintSet constraints_special_relativistic() const;
  ConstraintSet constraints_newtonian() const;
  ConstraintSet constraints_full(bool with_measurement = false,
                                 ParticleId measured = 2) const;

  /// The relational Hamiltonian seen from `frame` (full model): the frame's
  /// time-dilation factor multiplying every other particle's
  /// metric-weighted energy, the source-mass generator term, and the frame
  /// rest energy.
  OperatorExpr relational_hamiltonian(ParticleId frame) const;

  // -- frame-change flows ------------------------------------------------
  /// T_frame for the full model: time-entangling factor, translation,
  /// dilation to the locally inertial frame. Applied first to last.
  FlowSequence t_full(ParticleId frame, bool with_measurement = false,
                      ParticleId measured = 2) const;
  FlowSequence t_galilean(ParticleId frame) const;
  FlowSequence t_special_relativistic(ParticleId frame) const;
  /// T_12 = T_2 T_1^dagger (full model)
  FlowSequence t_swap(ParticleId from_frame, ParticleId to_frame) const;
};

}  // namespace qrfsim::alg
