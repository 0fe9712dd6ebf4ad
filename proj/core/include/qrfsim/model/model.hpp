#pragma once

#include <string>
#include <vector>

#include "qrfsim/alg/builders.hpp"

namespace qrfsim::model {

enum class Regime { Galilean, SpecialRelativistic, Newtonian, Full };

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);  // throws ConfigError

/// Weak-field bounds on |Phi|/c^2.
inline constexpr double kWeakFieldHard = 0.05;
inline constexpr double kWeakFieldWarn = 0.01;

struct ModelParams {
  std::vector<double> masses;  // m_1..m_N
  double GM = 0.0;             // Newtonian coupling of the source mass
  double c = 1.0;
  double r_min = 1e-3;         // potential regularization cutoff

  int n_particles() const { return static_cast<int>(masses.size()); }
  double mass(int particle) const;  // 1-based

  void validate() const;  // throws ConfigError
};

/// Phi(x) = -GM / max(|x|, r_min); even, asymptotically flat.
double potential(double x, const ModelParams& params);

double weak_field_ratio(double x_rel, const ModelParams& params);  // |Phi|/c^2

/// g00 = 1 + 2 Phi(x_rel)/c^2. Throws RegimeError above the hard weak-field
/// bound.
double metric_g00(double x_rel, const ModelParams& params);

/// log g00, evaluated stably for small Phi/c^2.
double log_metric_g00(double x_rel, const ModelParams& params);

double gamma_factor(double k, double m, double c);

/// Worldline element dtau/dx0 = sqrt(g00(x_rel)) / gamma(k).
double worldline_delta(double x_rel, double k, double m, const ModelParams& params);

/// g'00(q_i, q_M) = g00(q_i - q_M)/g00(q_M): the metric in the frame
/// particle's locally inertial frame (unity at q_i = 0).
double transformed_metric(double q_i, double q_M, const ModelParams& params);

/// sqrt(g'00) - 1 evaluated without cancellation (the gravitational kernels
/// need it to ~1e-12 absolute in the 1e-3 weak-field range).
double sqrt_transformed_metric_minus_one(double q_i, double q_M,
                                         const ModelParams& params);

/// Symbolic constraint set for the regime; galilean/special-relativistic
/// require GM = 0. The measurement variant needs at least two particles.
alg::ModelAlgebra::ConstraintSet build_constraints(Regime regime,
                                                   const ModelParams& params,
                                                   bool with_measurement = false,
                                                   int measured_particle = 2);

/// Frame-change flow sequence for the regime.
alg::FlowSequence frame_change_flows(Regime regime, const ModelParams& params,
                                     int frame);

}  // namespace qrfsim::model
