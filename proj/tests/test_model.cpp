#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qrfsim/errors.hpp"
#include "qrfsim/model/diagnostics.hpp"
#include "qrfsim/model/model.hpp"
#include "qrfsim/num/spectral.hpp"

using namespace qrfsim;
using namespace qrfsim::model;

namespace {

ModelParams two_particles(double GM, double c = 1.0, double r_min = 1e-3) {
  ModelParams p;
  p.masses = {1.0, 1.0};
  p.GM = GM;
  p.c = c;
  p.r_min = r_min;
  return p;
}

// Simpson quadrature of f(x) weighted by a normalized |gaussian|^2 density
// with amplitude width sigma around x0: the independent oracle for the
// diagnostics moments.
double gauss_quadrature(double x0, double sigma, int n, double halfspan, auto&& f) {
  const double s = sigma / std::numbers::sqrt2;  // |psi|^2 std dev
  const double a = x0 - halfspan, b = x0 + halfspan;
  const double h = (b - a) / n;
  double acc = 0.0;
  auto dens = [&](double x) {
    const double u = (x - x0) / s;
    return std::exp(-0.5 * u * u) / (s * std::sqrt(2.0 * std::numbers::pi));
  };
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * dens(x) * f(x);
  }
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("potential: shape and symmetry") {
  auto p = two_particles(2.0, 1.0, 0.5);
  CHECK(potential(1.0, two_particles(0.0)) == 0.0);
  CHECK(potential(1e6, p) == doctest::Approx(0.0).epsilon(1e-5));
  CHECK(potential(1e6, p) < 0.0);
  for (double x : {0.1, 0.7, 3.0, 42.0}) {
    CHECK(potential(x, p) == potential(-x, p));
  }
  // cutoff regularization
  CHECK(potential(0.0, p) == potential(0.5, p));
}

TEST_CASE("metric g00") {
  CHECK(metric_g00(3.0, two_particles(0.0)) == 1.0);
  // GM/c^2 = 1e-6 r_min at x = r_min: g00 = 1 - 2e-6
  auto p = two_particles(1e-6, 1.0, 1.0);
  CHECK(metric_g00(1.0, p) == doctest::Approx(1.0 - 2e-6).epsilon(1e-12));
  // |Phi|/c^2 = 0.06 violates the hard bound
  auto strong = two_particles(0.06, 1.0, 1.0);
  CHECK_THROWS_AS(metric_g00(1.0, strong), RegimeError);
  CHECK(metric_g00(1.0, two_particles(0.04, 1.0, 1.0)) > 0.9);
}

TEST_CASE("gamma factor and worldline element") {
  CHECK(gamma_factor(0.0, 1.0, 1.0) == 1.0);
  CHECK(gamma_factor(2.0, 2.0, 1.0) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  double prev = 1.0;
  for (double k : {0.1, 0.4, 1.0, 3.0}) {
    const double g = gamma_factor(k, 1.0, 1.0);
    CHECK(g > prev);
    prev = g;
  }

  auto flat = two_particles(0.0);
  CHECK(worldline_delta(1.0, 0.0, 1.0, flat) == 1.0);
  CHECK(worldline_delta(1.0, 1.0, 1.0, flat) ==
        doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15));
  auto p = two_particles(1e-6, 1.0, 1.0);
  CHECK(worldline_delta(1.0, 0.0, 1.0, p) ==
        doctest::Approx(std::sqrt(1.0 - 2e-6)).epsilon(1e-12));

  // factorization Delta(x,k) = Delta(x,0) * gamma^-1 (exact by construction)
  for (double x : {0.7, 2.0, 9.0}) {
    for (double k : {0.0, 0.5, 2.0}) {
      CHECK(worldline_delta(x, k, 1.5, p) ==
            worldline_delta(x, 0.0, 1.5, p) / gamma_factor(k, 1.5, p.c));
    }
  }
}

TEST_CASE("transformed metric: locally inertial origin and ratio identity") {
  auto p = two_particles(0.05, 1.0, 0.1);
  for (double qM : {-30.0, -5.0, 4.0, 60.0}) {
    CHECK(transformed_metric(0.0, qM, p) == 1.0);  // exact
  }
  CHECK(transformed_metric(3.0, -7.0, two_particles(0.0)) == 1.0);
  // equal potential radii: |q_i - q_M| = |q_M|
  CHECK(transformed_metric(-10.0, -5.0, p) == doctest::Approx(1.0).epsilon(1e-15));
  // ratio identity against the direct metric quotient
  for (double q : {1.0, 2.5}) {
    const double direct = metric_g00(q - 8.0, p) / metric_g00(8.0, p);
    CHECK(std::abs(transformed_metric(q, 8.0, p) - direct) < 1e-12);
  }
}

TEST_CASE("constraint builders per regime") {
  auto flat = two_particles(0.0);
  const auto gal = build_constraints(Regime::Galilean, flat);
  CHECK(gal.all.size() == 4);
  CHECK_THROWS_AS(build_constraints(Regime::Galilean, two_particles(1.0)), ConfigError);

  const auto meas = build_constraints(Regime::Full, two_particles(0.5), true, 2);
  CHECK(meas.all[2].first == "f0_Q");
  bool has_kick = false;
  for (const auto& t : meas.f0.terms()) {
    for (const auto& [s, e] : t.mom.factors) {
      if (alg::kind_of(s) == alg::SymbolKind::KickOp) has_kick = true;
    }
  }
  CHECK(has_kick);

  ModelParams one;
  one.masses = {1.0};
  CHECK_THROWS_AS(build_constraints(Regime::Full, one, true), ConfigError);
}

TEST_CASE("regime diagnostics against the quadrature oracle") {
  const double m = 1.0, c = 1.0;
  ModelParams params;
  params.masses = {1.0, m};
  params.c = c;
  params.GM = 0.0;
  params.r_min = 0.1;

  // narrow k-packet at k = 0.3 mc: eps_p^2 ~ 0.09, eps_p^4 ~ 8.1e-3
  const auto grid = num::make_uniform_grid(512, 256.0, -128.0);
  const double k0 = 0.3, sigma_x = 20.0;  // sigma_k = 0.025
  num::WaveFunction psi({num::Axis{grid, "q2", num::Basis::Position}},
                        num::gaussian_profile(grid, 0.0, sigma_x, k0));
  auto diag = regime_diagnostics(psi, params, 2, "q2", 0.0);
  // momentum-space amplitude width is 1/sigma_x; moment integrals by Simpson
  const double width_k = 1.0 / sigma_x;
  auto kmom = [&](int n) {
    return gauss_quadrature(k0, width_k, 4000, 8.0 * width_k,
                            [&](double k) { return std::pow(k / (m * c), n); });
  };
  CHECK(diag.eps_p2 == doctest::Approx(kmom(2)).epsilon(1e-6));
  CHECK(diag.eps_p4 == doctest::Approx(kmom(4)).epsilon(1e-6));
  CHECK(diag.eps_p2 == doctest::Approx(0.09).epsilon(0.02));
  CHECK(diag.eps_p4 == doctest::Approx(8.1e-3).epsilon(0.1));
  CHECK(diag.eps_g == 0.0);
  CHECK(diag.eps_g_p2 == 0.0);
  CHECK(!diag.flagged);

  // packet near the cutoff with |Phi|/c^2 = 0.02 and k = 0.3 mc: flagged
  ModelParams grav = params;
  grav.GM = 0.02 * 40.0;  // |Phi|/c^2 = 0.02 at r = 40
  num::WaveFunction psi2({num::Axis{grid, "q2", num::Basis::Position}},
                         num::gaussian_profile(grid, 40.0, 2.0, k0));
  auto diag2 = regime_diagnostics(psi2, grav, 2, "q2", 0.0);
  CHECK(diag2.eps_g == doctest::Approx(0.02).epsilon(0.02));
  CHECK(diag2.eps_g_p2 == doctest::Approx(1.8e-3).epsilon(0.05));
  CHECK(diag2.flagged);
}
