// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime bounds are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qrfsim/alg/first_class.hpp"
#include "qrfsim/alg/tables.hpp"
#include "qrfsim/event/distribution.hpp"
#include "qrfsim/event/event.hpp"
#include "qrfsim/num/dense_oracle.hpp"
#include "qrfsim/num/spectral.hpp"
#include "qrfsim/num/trotter.hpp"
#include "qrfsim/scenario/presets.hpp"
#include "qrfsim/scenario/runner.hpp"

using namespace qrfsim;

namespace {

int g_failures = 0;

struct Criterion {
  const char* name;
  double time_bound_s;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void finish() {
    const double secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count() /
                        1000.0;
    expect(secs < time_bound_s,
           "runtime " + std::to_string(secs) + " s over the " +
               std::to_string(time_bound_s) + " s bound");
    std::printf("criterion %-38s %s  (%.1f s)%s%s\n", name, ok ? "PASS" : "FAIL", secs,
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++g_failures;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- 1 & 2
void criterion_constraint_closure() {
  Criterion c{"1: constraint algebra closure", 30.0};
  alg::ModelAlgebra m;
  m.n_particles = 2;
  const auto report = alg::verify_first_class(m.constraints_full().all,
                                              alg::GradingRule::regime());
  c.expect(report.all_weakly_zero, "a commutator fails to vanish after truncation");
  for (const auto& p : report.pairs) {
    const bool has_f1 = p.a == "f1" || p.b == "f1";
    const bool has_f0 = p.a == "f0" || p.b == "f0";
    if (has_f1) c.expect(p.exact_zero, "[" + p.a + "," + p.b + "] not exactly zero");
    if (has_f0 && !has_f1 && !p.exact_zero) {
      c.expect(p.residual_all_mixed_gp2,
               "[" + p.a + "," + p.b + "] residual below eps_g*eps_p^2");
    }
  }
  c.finish();
}

void criterion_conjugation_tables() {
  Criterion c{"2: Appendix-D conjugation tables", 120.0};
  alg::ModelAlgebra m;
  m.n_particles = 2;
  int lines = 0;
  for (auto t : {alg::ConjugationTable::T1, alg::ConjugationTable::T2,
                 alg::ConjugationTable::T12}) {
    const auto report = alg::verify_table(m, t);
    lines += static_cast<int>(report.lines.size());
    c.expect(report.all_pass, alg::table_name(t) + " has " +
                                  std::to_string(report.failures) + " failing lines");
  }
  c.expect(lines >= 30, "fewer table lines than expected");
  c.finish();
}

// ---------------------------------------------------------------- 3
void criterion_schrodinger_limit() {
  Criterion c{"3: Schrodinger-limit recovery", 60.0};
  const auto cfg = scenario::preset("schrodinger-limit");
  const auto rep = frame::schrodinger_limit_check(cfg.schro);
  c.expect(cfg.schro.grid.n == 256, "grid is not 256 points");
  c.expect(rep.travel_spacings >= 10.0,
           "packet moved only " + fmt(rep.travel_spacings) + " spacings");
  c.expect(rep.max_l2 < 1e-6, "L2 discrepancy " + fmt(rep.max_l2));
  c.finish();
}

// ---------------------------------------------------------------- 4
struct OracleInstance {
  num::WaveFunction psi;
  std::vector<num::DiagonalKernel> kernels;  // splitting order (outermost first)
};

OracleInstance oracle_instance(model::Regime regime) {
  model::ModelParams params;
  params.masses = {1.0, 2.0};
  params.c = 2.0;
  const bool gravity =
      regime == model::Regime::Newtonian || regime == model::Regime::Full;
  params.GM = gravity ? 0.4 : 0.0;
  params.r_min = 1.0;
  const double q_M = -60.0;

  const auto gq = num::make_uniform_grid(16, 16.0, -48.0);
  const auto gt = num::make_uniform_grid(32, 25.6, -12.8);
  const auto gp = num::make_uniform_grid(2, 2.0, 0.0);
  num::WaveFunction psi({num::Axis{gq, "q2", num::Basis::Position},
                         num::Axis{gt, "t2", num::Basis::Position},
                         num::Axis{gp, "pointer", num::Basis::Position}},
                        std::vector<num::cplx>(16 * 32 * 2));
  const auto pq = num::gaussian_profile(gq, -40.0, 2.0, 0.5);
  const auto pt = num::gaussian_profile(gt, 0.0, 2.0, 0.0);
  std::size_t idx = 0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 32; ++j) {
      psi.amplitudes()[idx] = pq[i] * pt[j] / std::sqrt(gp.spacing);
      idx += 2;
    }
  }
  frame::AxisLayout layout;
  layout.entries = {{"q2", frame::AxisRole::RelativePosition, 2},
                    {"t2", frame::AxisRole::Clock, 2},
                    {"pointer", frame::AxisRole::Pointer, 0}};
  const auto spec = frame::build_hamiltonian(regime, params, q_M, psi, layout);

  event::EventSpec ev;
  ev.tau2_star = 0.3;
  ev.sigma_t = 1.0;
  const auto kicks = event::event_kernels(spec, ev, psi);

  OracleInstance inst{std::move(psi), {}};
  inst.kernels = kicks;
  for (auto it = spec.kernels.rbegin(); it != spec.kernels.rend(); ++it) {
    inst.kernels.push_back(*it);
  }
  return inst;
}

void criterion_oracle_equivalence() {
  Criterion c{"4: Trotter vs dense oracle", 300.0};
  const double t = 0.25;
  for (auto regime : {model::Regime::Galilean, model::Regime::SpecialRelativistic,
                      model::Regime::Newtonian, model::Regime::Full}) {
    const auto inst = oracle_instance(regime);
    const auto H = num::dense_generator_matrix(inst.kernels, inst.psi);
    const double herm = (H - H.adjoint()).cwiseAbs().maxCoeff();
    c.expect(herm < 1e-10, model::regime_name(regime) + ": non-Hermitian " + fmt(herm));
    const auto exact = num::dense_oracle_evolve(H, num::to_dense_vector(inst.psi), t);
    auto deviation = [&](double dtau) {
      const auto plan = num::make_strang_plan(dtau, inst.kernels, inst.psi);
      const auto out = num::trotter_evolve(plan, inst.psi, std::lround(t / dtau));
      return (num::to_dense_vector(out) - exact).cwiseAbs().maxCoeff();
    };
    const double e1 = deviation(1e-3);
    const double e2 = deviation(5e-4);
    c.expect(e1 < 1e-6, model::regime_name(regime) + ": deviation " + fmt(e1));
    const double ratio = e1 / e2;
    c.expect(ratio > 3.5 && ratio < 4.5,
             model::regime_name(regime) + ": halving ratio " + fmt(ratio));
  }
  c.finish();
}

// ---------------------------------------------------------------- 5
void criterion_galilean_event() {
  Criterion c{"5: galilean event localization", 60.0};
  const auto cfg = scenario::preset("galilean-event");
  scenario::RunOptions opts;
  const auto res = scenario::run_scenario(cfg, opts);
  c.expect(res.all_pass, "runner checks failed");
  const auto& dist = *res.distribution;
  const double sigma = cfg.event.sigma_t;
  c.expect(event::transition_width(dist) <= 2.0 * sigma,
           "transition width " + fmt(event::transition_width(dist)));
  double pre = 0.0;
  for (std::size_t i = 0; i < dist.occurred.size(); ++i) {
    if (dist.tau_grid.point(static_cast<int>(i)) <= cfg.event.tau2_star - 5.0 * sigma) {
      pre = std::max(pre, dist.occurred[i]);
    }
  }
  c.expect(pre < 1e-6, "pre-step mass " + fmt(pre));
  const auto peaks = event::density_peaks(dist);
  c.expect(peaks.size() == 1 &&
               std::abs(peaks[0] - cfg.event.tau2_star) <
                   std::max(sigma, dist.tau_grid.spacing),
           "step not at tau2*");
  c.finish();
}

// ---------------------------------------------------------------- 6 & 7
void check_bimodal(Criterion& c, const scenario::ScenarioConfig& cfg,
                   const scenario::RunResult& res, bool check_plateaus) {
  const auto& dist = *res.distribution;
  const double tol = std::max(cfg.event.sigma_t, dist.tau_grid.spacing);
  const auto peaks = event::density_peaks(dist, 0.2);
  c.expect(peaks.size() == 2, "expected a bimodal density, found " +
                                  std::to_string(peaks.size()) + " peaks");
  auto predicted = res.predicted_peaks;
  std::sort(predicted.begin(), predicted.end());
  auto measured = peaks;
  std::sort(measured.begin(), measured.end());
  for (std::size_t i = 0; i < std::min(predicted.size(), measured.size()); ++i) {
    c.expect(std::abs(predicted[i] - measured[i]) < tol,
             "peak " + std::to_string(i) + " off by " +
                 fmt(std::abs(predicted[i] - measured[i])) + " (tol " + fmt(tol) + ")");
  }
  if (check_plateaus && predicted.size() == 2) {
    // branch weights in firing order: the earlier peak belongs to the
    // faster-ticking branch
    double w_first = 0.0;
    double best = 1e300;
    for (std::size_t b = 0; b < cfg.branches.size(); ++b) {
      const double d = std::abs(res.predicted_peaks[b] - predicted[0]);
      if (d < best) {
        best = d;
        w_first = std::norm(cfg.branches[b].amplitude);
      }
    }
    const double mid = 0.5 * (predicted[0] + predicted[1]);
    const double plateau = event::occurrence_at(dist, mid);
    c.expect(std::abs(plateau - w_first) < 1e-3,
             "mid plateau " + fmt(plateau) + " vs " + fmt(w_first));
    const double final_occ = dist.occurred.back();
    c.expect(std::abs(final_occ - 1.0) < 1e-3, "final occurrence " + fmt(final_occ));
  }
}

void criterion_sr_dilation() {
  Criterion c{"6: superposed SR time dilation", 300.0};
  const auto cfg = scenario::preset("sr-two-momenta");
  scenario::RunOptions opts;
  const auto res = scenario::run_scenario(cfg, opts);
  c.expect(res.all_pass, "runner checks failed");
  check_bimodal(c, cfg, res, true);
  c.finish();
}

void criterion_newtonian_redshift() {
  Criterion c{"7: superposed gravitational redshift", 300.0};
  const auto cfg = scenario::preset("newtonian-two-positions");
  scenario::RunOptions opts;
  const auto res = scenario::run_scenario(cfg, opts);
  c.expect(res.all_pass, "runner checks failed");
  check_bimodal(c, cfg, res, false);
  // m1 = m2 and k2 sharp at zero: the special-relativistic factor moves the
  // peaks by less than 1e-6
  const double sk = 1.0 / (2.0 * cfg.branches[0].packets.at("q2").width);
  const double gamma_shift =
      std::abs(model::gamma_factor(3.0 * sk, cfg.params.masses[0], cfg.params.c) /
                   model::gamma_factor(3.0 * sk, cfg.params.masses[1], cfg.params.c) -
               1.0) *
      cfg.event.tau2_star;
  c.expect(gamma_shift < 1e-6, "SR factor shifts peaks by " + fmt(gamma_shift));
  c.finish();
}

// ---------------------------------------------------------------- 8
void criterion_qrf_swap() {
  Criterion c{"8: QRF-swap form invariance", 120.0};
  const auto cfg = scenario::preset("qrf-swap-mirror");
  const auto rep = frame::qrf_swap_check(cfg.swap);
  c.expect(rep.constraints_map_ok, "constraint forms do not map");
  c.expect(rep.hamiltonian_swap_ok, "H^(2) is not the label swap of H^(1)");
  c.expect(rep.involution_ok, "T12 then T21 is not the identity");
  c.expect(rep.mirror_ok, "mirror deviation " + fmt(rep.mirror_max_dev));
  c.finish();
}

// ---------------------------------------------------------------- 9
scenario::ScenarioConfig xval_config(model::Regime regime) {
  scenario::ScenarioConfig cfg;
  cfg.kind = scenario::ScenarioKind::Evolution;
  cfg.regime = regime;
  cfg.run_closed_form = true;
  cfg.has_event = true;
  cfg.event.tau2_star = 4.0;
  cfg.tau = {32, 6.4, 0.0};
  cfg.dtau = 0.0125;

  scenario::BranchSpec b1, b2;
  switch (regime) {
    case model::Regime::Galilean: {
      cfg.name = "xval-galilean";
      cfg.params.masses = {4.0, 4.0};
      cfg.params.c = 10.0;
      cfg.params.r_min = 1.0;
      cfg.axes = {{"q2", frame::AxisRole::RelativePosition, 2, 64, 32.0, -16.0},
                  {"t2", frame::AxisRole::Clock, 2, 64, 12.8, -3.0},
                  {"pointer", frame::AxisRole::Pointer, 0, 2, 2.0, 0.0}};
      cfg.event.sigma_t = 0.4;  // 2x the clock spacing
      b1.amplitude = {1.0, 0.0};
      b1.packets["q2"] = {0.0, 2.0, 0.3};
      b1.packets["t2"] = {0.0, 0.5, 0.0};
      cfg.branches = {b1};
      break;
    }
    case model::Regime::SpecialRelativistic: {
      cfg.name = "xval-sr";
      cfg.params.masses = {5.0, 10.0};
      cfg.params.c = 1.0;
      cfg.params.r_min = 1.0;
      cfg.axes = {{"q2", frame::AxisRole::RelativePosition, 2, 64, 45.76, -26.88},
                  {"t2", frame::AxisRole::Clock, 2, 64, 14.08, -3.0},
                  {"pointer", frame::AxisRole::Pointer, 0, 2, 2.0, 0.0}};
      cfg.event.sigma_t = 0.44;
      b1.amplitude = {0.6, 0.0};
      b1.packets["q2"] = {-4.0, 2.5, 1.6};
      b1.packets["t2"] = {0.0, 0.55, 0.0};
      b2.amplitude = {0.8, 0.0};
      b2.packets["q2"] = {-4.0, 2.5, 3.2};
      b2.packets["t2"] = {0.0, 0.55, 0.0};
      cfg.branches = {b1, b2};
      break;
    }
    default: {
      cfg.name = "xval-newtonian";
      cfg.params.masses = {50.0, 50.0};
      cfg.params.c = 1.0;
      cfg.params.GM = 0.4;
      cfg.params.r_min = 1.0;
      cfg.q_M = -5000.0;
      cfg.axes = {{"q2", frame::AxisRole::RelativePosition, 2, 64, 68.0, -4619.0},
                  {"t2", frame::AxisRole::Clock, 2, 64, 12.8, -3.0},
                  {"pointer", frame::AxisRole::Pointer, 0, 2, 2.0, 0.0}};
      cfg.event.sigma_t = 0.4;
      b1.amplitude = {std::sqrt(0.5), 0.0};
      b1.packets["q2"] = {-4600.0, 2.5, 0.0};
      b1.packets["t2"] = {0.0, 0.5, 0.0};
      b2.amplitude = {std::sqrt(0.5), 0.0};
      b2.packets["q2"] = {-4570.0, 2.5, 0.0};
      b2.packets["t2"] = {0.0, 0.5, 0.0};
      cfg.branches = {b1, b2};
      break;
    }
  }
  return cfg;
}

void criterion_closed_form_crossval() {
  Criterion c{"9: closed form vs time-ordered kick", 300.0};
  for (auto regime : {model::Regime::Galilean, model::Regime::SpecialRelativistic,
                      model::Regime::Newtonian}) {
    const auto cfg = xval_config(regime);
    scenario::RunOptions opts;
    const auto res = scenario::run_scenario(cfg, opts);
    c.expect(res.all_pass, model::regime_name(regime) + ": runner checks failed");
    c.expect(res.closed_form_max_l2 >= 0.0 && res.closed_form_max_l2 < 1e-4,
             model::regime_name(regime) + ": L2 " + fmt(res.closed_form_max_l2));
  }
  c.finish();
}

// ---------------------------------------------------------------- 10
void criterion_invariant_suite() {
  Criterion c{"10: randomized invariant suite", 600.0};
  std::mt19937 rng(20260809);
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  int configs = 0;

  // unitarity of random spectral/kernel compositions (norm within 1e-10)
  for (int trial = 0; trial < 40; ++trial, ++configs) {
    const int n = 1 << std::uniform_int_distribution<int>(4, 6)(rng);
    const auto g = num::make_uniform_grid(n, uni(8.0, 32.0), uni(-20.0, -4.0));
    num::WaveFunction psi({num::Axis{g, "x", num::Basis::Position}},
                          num::gaussian_profile(g, g.offset + 0.5 * g.length(),
                                                0.12 * g.length(), uni(-1.0, 1.0)));
    num::DiagonalKernel kin, pot;
    kin.name = "K";
    kin.acts_on = {"x"};
    kin.basis_required = {num::Basis::Momentum};
    pot.name = "V";
    pot.acts_on = {"x"};
    pot.basis_required = {num::Basis::Position};
    const double a = uni(0.1, 2.0), b = uni(-1.0, 1.0), w = uni(0.1, 1.0);
    for (int i = 0; i < n; ++i) {
      const double k = g.conjugate_point(i);
      kin.values.push_back(num::cplx{a * k * k + b * k, 0.0});
      const double x = g.point(i);
      pot.values.push_back(num::cplx{std::sin(w * x) + 0.3 * x, 0.0});
    }
    const auto plan = num::make_strang_plan(uni(1e-3, 1e-2), {pot, kin}, psi);
    const auto out = num::trotter_evolve(plan, psi, 100);
    c.expect(std::abs(out.norm() - 1.0) < 1e-10, "unitarity defect");
  }

  // energy conservation along evolve_history (1e-8 relative)
  for (int trial = 0; trial < 25; ++trial, ++configs) {
    model::ModelParams params;
    params.masses = {uni(1.0, 4.0), uni(1.0, 4.0)};
    params.c = uni(2.0, 6.0);
    const bool gravity = trial % 2 == 0;
    params.GM = gravity ? uni(0.1, 0.5) : 0.0;
    params.r_min = 1.0;
    const double q_M = -80.0;
    const auto regime = gravity ? model::Regime::Newtonian : model::Regime::Galilean;
    const auto gq = num::make_uniform_grid(64, 32.0, -16.0);
    num::WaveFunction psi({num::Axis{gq, "q2", num::Basis::Position}},
                          num::gaussian_profile(gq, uni(-2.0, 2.0), uni(1.5, 2.5),
                                                uni(-0.3, 0.3)));
    frame::AxisLayout layout;
    layout.entries = {{"q2", frame::AxisRole::RelativePosition, 2}};
    const auto spec = frame::build_hamiltonian(regime, params, q_M, psi, layout);
    frame::EvolveOptions opts;
    opts.dtau = 0.005;
    const auto history = frame::evolve_history(psi, spec, num::Grid1D{4, 0.25, 0.0}, opts);
    const double e0 = frame::energy_expectation(spec, history.snapshots.front());
    for (const auto& snap : history.snapshots) {
      const double e = frame::energy_expectation(spec, snap);
      c.expect(std::abs(e - e0) <= 1e-8 * std::abs(e0), "energy drift");
    }
  }

  // locally inertial origin, exact
  for (int trial = 0; trial < 15; ++trial, ++configs) {
    model::ModelParams params;
    params.masses = {1.0, 1.0};
    params.GM = uni(0.0, 1.0);
    params.c = uni(1.0, 5.0);
    params.r_min = 0.5;
    const double qM = uni(-100.0, -30.0);
    c.expect(model::transformed_metric(0.0, qM, params) == 1.0,
             "transformed metric at the origin");
  }

  // monotone occurrence for randomized event scenarios
  for (int trial = 0; trial < 12; ++trial, ++configs) {
    auto cfg = xval_config(model::Regime::Galilean);
    cfg.run_closed_form = false;
    cfg.event.tau2_star = uni(2.0, 5.0);
    cfg.event.sigma_t = uni(0.4, 0.6);
    cfg.event.kick_phase = uni(0.3, 1.57);
    cfg.branches[0].packets["q2"].momentum = uni(-0.3, 0.3);
    scenario::RunOptions opts;
    const auto res = scenario::run_scenario(cfg, opts);
    c.expect(res.distribution && res.distribution->monotone, "occurrence not monotone");
  }

  // limit coherence of the kernel builders
  for (int trial = 0; trial < 10; ++trial, ++configs) {
    model::ModelParams params;
    params.masses = {uni(1.0, 3.0), uni(1.0, 3.0)};
    params.c = uni(2.0, 5.0);
    params.GM = 0.0;
    params.r_min = 1.0;
    const auto gq = num::make_uniform_grid(16, 16.0, -8.0);
    const auto gt = num::make_uniform_grid(16, 8.0, -4.0);
    num::WaveFunction psi(
        {num::Axis{gq, "q2", num::Basis::Position}, num::Axis{gt, "t2", num::Basis::Position}},
        std::vector<num::cplx>(16 * 16, num::cplx{1.0, 0.0}));
    frame::AxisLayout layout;
    layout.entries = {{"q2", frame::AxisRole::RelativePosition, 2},
                      {"t2", frame::AxisRole::Clock, 2}};
    const auto full =
        frame::build_hamiltonian(model::Regime::Full, params, 0.0, psi, layout);
    const auto sr = frame::build_hamiltonian(model::Regime::SpecialRelativistic, params,
                                             0.0, psi, layout);
    bool equal = full.kernels.size() == sr.kernels.size();
    for (std::size_t i = 0; equal && i < full.kernels[0].values.size(); ++i) {
      equal = full.kernels[0].values[i] == sr.kernels[0].values[i];
    }
    c.expect(equal, "full(GM=0) != special-relativistic");

    const auto gal =
        frame::build_hamiltonian(model::Regime::Galilean, params, 0.0, psi, layout);
    const auto newt =
        frame::build_hamiltonian(model::Regime::Newtonian, params, 0.0, psi, layout);
    bool offset_ok = true;
    for (std::size_t i = 0; i < gal.kernels[0].values.size(); ++i) {
      const double d = newt.kernels[0].values[i].real() -
                       gal.kernels[0].values[i].real() - newt.rest_energy_offset;
      offset_ok = offset_ok && std::abs(d) < 1e-9 * newt.rest_energy_offset;
    }
    c.expect(offset_ok, "newtonian != galilean + rest offset");
  }

  c.expect(configs >= 100, "fewer than 100 randomized configurations");
  c.finish();
}

}  // namespace

int main() {
  criterion_constraint_closure();
  criterion_conjugation_tables();
  criterion_schrodinger_limit();
  criterion_oracle_equivalence();
  criterion_galilean_event();
  criterion_sr_dilation();
  criterion_newtonian_redshift();
  criterion_qrf_swap();
  criterion_closed_form_crossval();
  criterion_invariant_suite();
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
