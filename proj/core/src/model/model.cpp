#include "qrfsim/model/model.hpp"

#include <cmath>

#include "qrfsim/errors.hpp"

namespace qrfsim::model {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Galilean:
      return "galilean";
    case Regime::SpecialRelativistic:
      return "special_relativistic";
    case Regime::Newtonian:
      return "newtonian";
    case Regime::Full:
      return "full";
  }
  return "?";
}

Regime regime_from_name(const std::string& name) {
  if (name == "galilean") return Regime::Galilean;
  if (name == "special_relativistic") return Regime::SpecialRelativistic;
  if (name == "newtonian") return Regime::Newtonian;
  if (name == "full") return Regime::Full;
  throw ConfigError("unknown regime '" + name + "'");
}

double ModelParams::mass(int particle) const {
  if (particle < 1 || particle > n_particles()) {
    throw ContractError("particle index out of range");
  }
  return masses[static_cast<std::size_t>(particle - 1)];
}

void ModelParams::validate() const {
  if (masses.empty()) throw ConfigError("at least one particle mass required");
  for (double m : masses) {
    if (!(m > 0.0)) throw ConfigError("particle masses must be positive");
  }
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (!(r_min > 0.0)) throw ConfigError("r_min must be positive");
  if (GM < 0.0) throw ConfigError("GM must be nonnegative");
}

double potential(double x, const ModelParams& params) {
  return -params.GM / std::max(std::abs(x), params.r_min);
}

double weak_field_ratio(double x_rel, const ModelParams& params) {
  return std::abs(potential(x_rel, params)) / (params.c * params.c);
}

double metric_g00(double x_rel, const ModelParams& params) {
  const double ratio = weak_field_ratio(x_rel, params);
  if (ratio > kWeakFieldHard) {
    throw RegimeError("weak-field bound violated: |Phi|/c^2 = " + std::to_string(ratio));
  }
  return 1.0 + 2.0 * potential(x_rel, params) / (params.c * params.c);
}

double log_metric_g00(double x_rel, const ModelParams& params) {
  const double ratio = weak_field_ratio(x_rel, params);
  if (ratio > kWeakFieldHard) {
    throw RegimeError("weak-field bound violated: |Phi|/c^2 = " + std::to_string(ratio));
  }
  return std::log1p(2.0 * potential(x_rel, params) / (params.c * params.c));
}

double gamma_factor(double k, double m, double c) {
  const double u = k / (m * c);
  return std::sqrt(1.0 + u * u);
}

double worldline_delta(double x_rel, double k, double m, const ModelParams& params) {
  return std::sqrt(metric_g00(x_rel, params)) / gamma_factor(k, m, params.c);
}

double transformed_metric(double q_i, double q_M, const ModelParams& params) {
  return std::exp(log_metric_g00(q_i - q_M, params) - log_metric_g00(q_M, params));
}

double sqrt_transformed_metric_minus_one(double q_i, double q_M,
                                         const ModelParams& params) {
  return std::expm1(0.5 * (log_metric_g00(q_i - q_M, params) -
                           log_metric_g00(q_M, params)));
}

namespace {

void check_regime_params(Regime regime, const ModelParams& params) {
  params.validate();
  if ((regime == Regime::Galilean || regime == Regime::SpecialRelativistic) &&
      params.GM != 0.0) {
    throw ConfigError(regime_name(regime) + " regime requires GM = 0");
  }
}

}  // namespace

alg::ModelAlgebra::ConstraintSet build_constraints(Regime regime,
                                                   const ModelParams& params,
                                                   bool with_measurement,
                                                   int measured_particle) {
  check_regime_params(regime, params);
  if (with_measurement && params.n_particles() < 2) {
    throw ConfigError("the measurement constraint needs at least two particles");
  }
  alg::ModelAlgebra m;
  m.n_particles = params.n_particles();
  switch (regime) {
    case Regime::Galilean: {
      auto cs = m.constraints_galilean();
      if (with_measurement) {
        cs.f0 = cs.f0 + truncate(m.kick_window(measured_particle) *
                                     alg::OperatorExpr::symbol(
                                         alg::ModelAlgebra::kick(measured_particle)),
                                 m.rule)
                            .scaled(alg::CRational(alg::Rational(1)),
                                    [] {
                                      alg::ParamPow p;
                                      p.c = -1;
                                      return p;
                                    }());
        cs.all[static_cast<std::size_t>(m.n_particles)] = {"f0_Q", cs.f0};
      }
      return cs;
    }
    case Regime::SpecialRelativistic: {
      auto cs = m.constraints_special_relativistic();
      if (with_measurement) {
        alg::ParamPow invc;
        invc.c = -1;
        cs.f0 = cs.f0 +
                truncate(m.gamma_pow(alg::OperatorExpr::symbol(
                                         alg::ModelAlgebra::mom(measured_particle)),
                                     measured_particle, alg::Rational(-1, 2)) *
                             m.kick_window(measured_particle) *
                             alg::OperatorExpr::symbol(
                                 alg::ModelAlgebra::kick(measured_particle)),
                         m.rule)
                    .scaled(alg::CRational(alg::Rational(1)), invc);
        cs.all[static_cast<std::size_t>(m.n_particles)] = {"f0_Q", cs.f0};
      }
      return cs;
    }
    case Regime::Newtonian: {
      auto cs = m.constraints_newtonian();
      if (with_measurement) {
        alg::ParamPow invc;
        invc.c = -1;
        cs.f0 = cs.f0 +
                truncate(m.g00_pow(alg::ModelAlgebra::rel_pos(measured_particle),
                                   alg::Rational(1, 2)) *
                             m.kick_window(measured_particle) *
                             alg::OperatorExpr::symbol(
                                 alg::ModelAlgebra::kick(measured_particle)),
                         m.rule)
                    .scaled(alg::CRational(alg::Rational(1)), invc);
        cs.all[static_cast<std::size_t>(m.n_particles)] = {"f0_Q", cs.f0};
      }
      return cs;
    }
    case Regime::Full:
      return m.constraints_full(with_measurement, measured_particle);
  }
  throw ContractError("unreachable regime");
}

alg::FlowSequence frame_change_flows(Regime regime, const ModelParams& params,
                                     int frame) {
  check_regime_params(regime, params);
  alg::ModelAlgebra m;
  m.n_particles = params.n_particles();
  switch (regime) {
    case Regime::Galilean:
      return m.t_galilean(frame);
    case Regime::SpecialRelativistic:
      return m.t_special_relativistic(frame);
    case Regime::Newtonian:
    case Regime::Full:
      return m.t_full(frame);
  }
  throw ContractError("unreachable regime");
}

}  // namespace qrfsim::model
