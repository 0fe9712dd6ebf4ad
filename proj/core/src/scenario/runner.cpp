#include "qrfsim/scenario/runner.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "qrfsim/errors.hpp"
#include "qrfsim/num/spectral.hpp"
#include "qrfsim/scenario/manifest.hpp"

namespace qrfsim::scenario {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void add_check(RunResult& res, const std::string& name, bool pass,
               const std::string& detail) {
  res.checks.push_back({name, pass, detail});
  if (!pass) res.all_pass = false;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write '" + path + "'");
  out << content;
}

void write_marginals(const std::string& dir, const frame::HistoryState& history,
                     const ScenarioConfig& cfg) {
  for (const auto& axspec : cfg.axes) {
    const bool spatial = axspec.role == frame::AxisRole::RelativePosition;
    for (const bool momentum_side : {false, true}) {
      if (momentum_side && !spatial) continue;
      std::string body = "# tau1\tcoord\tprobability\n";
      for (std::size_t s = 0; s < history.snapshots.size(); ++s) {
        num::WaveFunction snap = history.snapshots[s];
        const std::size_t ai = snap.axis_index(axspec.label);
        if (momentum_side) num::toggle_axis_basis(snap, ai);
        const auto m = num::marginal(snap, ai);
        const auto& ax = snap.axis(ai);
        for (int i = 0; i < ax.grid.n; ++i) {
          body += fmt(history.tau(static_cast<int>(s))) + "\t" + fmt(ax.coord(i)) +
                  "\t" + fmt(m[static_cast<std::size_t>(i)]) + "\n";
        }
      }
      write_text(dir + "/marginal_" + axspec.label +
                     (momentum_side ? "_momentum.tsv" : ".tsv"),
                 body);
    }
  }
}

void write_full_history(const std::string& dir, const frame::HistoryState& history) {
  std::string body = "# tau1\tcoords...\tre\tim\n";
  for (std::size_t s = 0; s < history.snapshots.size(); ++s) {
    const auto& snap = history.snapshots[s];
    std::vector<std::size_t> idx(snap.rank(), 0);
    for (std::size_t flat = 0; flat < snap.size(); ++flat) {
      body += fmt(history.tau(static_cast<int>(s)));
      for (std::size_t a = 0; a < snap.rank(); ++a) {
        body += "\t" + fmt(snap.axis(a).coord(static_cast<int>(idx[a])));
      }
      const auto& v = snap.amplitudes()[flat];
      body += "\t" + fmt(v.real()) + "\t" + fmt(v.imag()) + "\n";
      for (std::size_t a = snap.rank(); a-- > 0;) {
        if (++idx[a] < static_cast<std::size_t>(snap.axis(a).grid.n)) break;
        idx[a] = 0;
      }
    }
  }
  write_text(dir + "/history.tsv", body);
}

void write_distribution(const std::string& dir,
                        const event::EventTimeDistribution& dist,
                        const json& meta) {
  std::string body = "# tau1\toccurred\tdensity\n";
  for (std::size_t i = 0; i < dist.occurred.size(); ++i) {
    body += fmt(dist.tau_grid.point(static_cast<int>(i))) + "\t" +
            fmt(dist.occurred[i]) + "\t" + fmt(dist.density[i]) + "\n";
  }
  write_text(dir + "/event_distribution.tsv", body);
  write_text(dir + "/event_distribution.meta.json", meta.dump(2) + "\n");
}

RunResult run_evolution(const ScenarioConfig& cfg, const RunOptions& opts) {
  RunResult res;

  // memory estimate before anything is allocated
  double amps = 1.0;
  std::string product;
  for (const auto& a : cfg.axes) {
    amps *= a.n;
    product += (product.empty() ? "" : "x") + std::to_string(a.n);
  }
  const double mb = amps * 16.0 * (cfg.tau.n + 4) / (1024.0 * 1024.0);
  if (mb > opts.max_mem_mb) {
    throw ResourceError("estimated memory " + std::to_string(mb) + " MB for axes " +
                        product + " and " + std::to_string(cfg.tau.n) +
                        " snapshots exceeds the cap of " +
                        std::to_string(opts.max_mem_mb) + " MB");
  }

  num::WaveFunction psi0 = build_initial_state(cfg);
  const auto layout = layout_of(cfg);

  const auto spec = frame::build_hamiltonian(cfg.regime, cfg.params, cfg.q_M, psi0,
                                             layout, /*frame=*/1);

  // regime diagnostics on the first non-frame particle's axis
  int measured = cfg.has_event ? cfg.event.measured_particle : 2;
  if (const auto* sp = layout.find(frame::AxisRole::RelativePosition, measured)) {
    res.diagnostics =
        model::regime_diagnostics(psi0, cfg.params, measured, sp->label, cfg.q_M);
  }

  frame::EvolveOptions eopts;
  eopts.dtau = cfg.dtau;

  event::EventSpec ev = cfg.event;
  if (opts.sigma_t_override) ev.sigma_t = *opts.sigma_t_override;

  frame::HistoryState history =
      cfg.has_event ? event::evolve_with_event(psi0, spec, ev, cfg.tau_grid(), eopts)
                    : frame::evolve_history(psi0, spec, cfg.tau_grid(), eopts);

  // unit-norm convention of the conditioned snapshots
  for (const auto& snap : history.snapshots) {
    res.max_norm_defect = std::max(res.max_norm_defect, std::abs(snap.norm() - 1.0));
  }
  add_check(res, "snapshot-norm", res.max_norm_defect < 1e-8,
            "max |norm-1| = " + fmt(res.max_norm_defect));

  if (!cfg.has_event) {
    const double e0 = frame::energy_expectation(spec, history.snapshots.front());
    double drift = 0.0;
    for (const auto& snap : history.snapshots) {
      drift = std::max(drift, std::abs(frame::energy_expectation(spec, snap) - e0));
    }
    res.energy_drift = drift / std::max(1.0, std::abs(e0));
    add_check(res, "energy-conservation", res.energy_drift < 1e-8,
              "relative drift = " + fmt(res.energy_drift));
  }

  json meta;
  if (cfg.has_event && ev.mode == event::EventSpec::Mode::Pointer) {
    const auto* ptr = layout.find(frame::AxisRole::Pointer);
    res.distribution = event::event_time_distribution(history, ptr->label);
    add_check(res, "occurrence-monotone", res.distribution->monotone,
              "max defect = " + fmt(res.distribution->max_monotonicity_defect));

    // predicted peak locations per branch (worldline-operator law)
    for (const auto& b : cfg.branches) {
      const auto* sp = layout.find(frame::AxisRole::RelativePosition, measured);
      const auto& pk = b.packets.at(sp->label);
      const double rate = frame::delta12(cfg.regime, cfg.params, pk.momentum, pk.center,
                                         cfg.q_M, 0.0, spec.frame, measured);
      res.predicted_peaks.push_back(ev.tau2_star / rate);
    }
    meta["predicted_peaks"] = res.predicted_peaks;
    meta["regime"] = model::regime_name(cfg.regime);
    meta["sigma_t"] = ev.sigma_t;
    meta["tau2_star"] = ev.tau2_star;
    json branches = json::array();
    for (const auto& b : cfg.branches) {
      const auto* sp = layout.find(frame::AxisRole::RelativePosition, measured);
      const auto& pk = b.packets.at(sp->label);
      branches.push_back({{"weight", std::norm(b.amplitude)},
                          {"center", pk.center},
                          {"momentum", pk.momentum}});
    }
    meta["branches"] = std::move(branches);
  }

  // cross-validation against the closed-form construction
  if (cfg.run_closed_form && cfg.has_event) {
    std::vector<event::PacketBranch> branches;
    double total = 0.0;
    for (const auto& b : cfg.branches) total += std::norm(b.amplitude);
    const double scale = std::sqrt(total);
    for (const auto& b : cfg.branches) {
      ScenarioConfig sub = cfg;
      sub.branches = {b};
      event::PacketBranch pb;
      pb.amplitude = b.amplitude / scale;
      pb.state = build_initial_state(sub);
      branches.push_back(std::move(pb));
    }
    const auto closed =
        event::closed_form_history(spec, ev, psi0, branches, cfg.tau_grid(), cfg.dtau);
    double max_l2 = 0.0;
    for (std::size_t s = 0; s < history.snapshots.size(); ++s) {
      max_l2 = std::max(max_l2,
                        num::l2_distance(history.snapshots[s], closed.snapshots[s]));
    }
    res.closed_form_max_l2 = max_l2;
    add_check(res, "closed-form-agreement", max_l2 < 1e-4,
              "max L2 snapshot distance = " + fmt(max_l2));
  }

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    write_marginals(opts.out_dir, history, cfg);
    if (res.distribution) write_distribution(opts.out_dir, *res.distribution, meta);
    if (cfg.export_full_history) write_full_history(opts.out_dir, history);
  }

  res.history = std::move(history);
  return res;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg_in, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig cfg = cfg_in;
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  RunResult res;
  switch (cfg.kind) {
    case ScenarioKind::Evolution:
      res = run_evolution(cfg, opts);
      break;
    case ScenarioKind::SchrodingerLimit: {
      res.schro_report = frame::schrodinger_limit_check(cfg.schro);
      add_check(res, "schrodinger-limit",
                res.schro_report->max_l2 < 1e-6 && res.schro_report->travel_spacings >= 10.0,
                "max L2 = " + fmt(res.schro_report->max_l2) + " over " +
                    fmt(res.schro_report->travel_spacings) + " grid spacings");
      break;
    }
    case ScenarioKind::QrfSwap: {
      res.swap_report = frame::qrf_swap_check(cfg.swap);
      add_check(res, "swap-symbolic-constraints", res.swap_report->constraints_map_ok, "");
      add_check(res, "swap-symbolic-hamiltonian", res.swap_report->hamiltonian_swap_ok, "");
      add_check(res, "swap-involution", res.swap_report->involution_ok, "");
      add_check(res, "swap-numeric-mirror", res.swap_report->mirror_ok,
                "max deviation = " + fmt(res.swap_report->mirror_max_dev));
      break;
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() / 1000.0;

  res.manifest_json = build_manifest(cfg, res, wall_ms);
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    write_text(opts.out_dir + "/manifest.json", res.manifest_json.dump(2) + "\n");
  }
  return res;
}

nlohmann::json RunResult::manifest() const { return manifest_json; }

std::vector<bool> run_batch(const std::vector<std::string>& config_paths,
                            const RunOptions& base_opts, int threads) {
  std::vector<bool> ok(config_paths.size(), false);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config_paths.size()) return;
      try {
        const auto cfg = parse_config_file(config_paths[i]);
        RunOptions opts = base_opts;
        if (!opts.out_dir.empty()) {
          opts.out_dir += "/" + std::filesystem::path(config_paths[i]).stem().string();
        }
        const auto res = run_scenario(cfg, opts);
        ok[i] = res.all_pass;
      } catch (const std::exception& e) {
        std::fprintf(stderr, "batch: %s: %s\n", config_paths[i].c_str(), e.what());
        ok[i] = false;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(config_paths.size())));
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return ok;
}

}  // namespace qrfsim::scenario
