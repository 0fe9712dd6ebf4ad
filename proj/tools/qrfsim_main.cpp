#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "qrfsim/alg/first_class.hpp"
#include "qrfsim/alg/tables.hpp"
#include "qrfsim/errors.hpp"
#include "qrfsim/scenario/presets.hpp"
#include "qrfsim/scenario/runner.hpp"

namespace {

using nlohmann::json;
using namespace qrfsim;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitResourceError = 3;

struct AlgebraConfig {
  int n_particles = 2;
  bool with_measurement = false;
  alg::GradingRule rule = alg::GradingRule::regime();
};

AlgebraConfig parse_algebra_config(const std::string& path) {
  AlgebraConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "schema_version" && key != "n_particles" && key != "with_measurement" &&
        key != "grading") {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  if (doc.contains("n_particles")) cfg.n_particles = doc.at("n_particles").get<int>();
  if (cfg.n_particles < 2 || cfg.n_particles > 6) {
    throw ConfigError("n_particles must be between 2 and 6");
  }
  if (doc.contains("with_measurement")) {
    cfg.with_measurement = doc.at("with_measurement").get<bool>();
  }
  if (doc.contains("grading")) {
    const auto& g = doc.at("grading");
    for (const auto& [key, _] : g.items()) {
      if (key != "max_g" && key != "max_p" && key != "keep_mixed_gp2") {
        throw ConfigError("config: unknown grading key '" + key + "'");
      }
    }
    if (g.contains("max_g")) cfg.rule.max_g = g.at("max_g").get<int>();
    if (g.contains("max_p")) cfg.rule.max_p = g.at("max_p").get<int>();
    if (g.contains("keep_mixed_gp2")) {
      cfg.rule.drop_mixed_gp = !g.at("keep_mixed_gp2").get<bool>();
    }
  }
  return cfg;
}

json first_class_json(const alg::FirstClassReport& report) {
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    json residuals = json::array();
    for (std::size_t i = 0; i < p.residual_terms.size(); ++i) {
      residuals.push_back({{"term", p.residual_terms[i]},
                           {"eps_g", p.residual_gradings[i].g},
                           {"eps_p", p.residual_gradings[i].p}});
    }
    pairs.push_back({{"pair", "[" + p.a + ", " + p.b + "]"},
                     {"exact_zero", p.exact_zero},
                     {"weakly_zero", p.weak_zero},
                     {"residual_all_eps_g_eps_p2", p.residual_all_mixed_gp2},
                     {"residuals", std::move(residuals)}});
  }
  return {{"pairs", std::move(pairs)}, {"all_weakly_zero", report.all_weakly_zero}};
}

json table_json(const alg::TableReport& report) {
  json lines = json::array();
  for (const auto& line : report.lines) {
    json residuals = json::array();
    for (std::size_t i = 0; i < line.residual_terms.size(); ++i) {
      residuals.push_back({{"term", line.residual_terms[i]},
                           {"eps_g", line.residual_gradings[i].g},
                           {"eps_p", line.residual_gradings[i].p}});
    }
    lines.push_back({{"lhs", line.lhs},
                     {"pass", line.pass},
                     {"residuals", std::move(residuals)}});
  }
  return {{"table", alg::table_name(report.table)},
          {"all_pass", report.all_pass},
          {"failures", report.failures},
          {"lines", std::move(lines)}};
}

int cmd_verify_algebra(const std::string& config_path, const std::string& out_dir) {
  const auto cfg = parse_algebra_config(config_path);
  alg::ModelAlgebra m;
  m.n_particles = cfg.n_particles;

  const auto cs = m.constraints_full(cfg.with_measurement);
  const auto fc = alg::verify_first_class(cs.all, cfg.rule);

  bool ok = fc.all_weakly_zero;
  for (const auto& p : fc.pairs) {
    const bool has_f1 = p.a == "f1" || p.b == "f1";
    const bool has_f0 = p.a.rfind("f0", 0) == 0 || p.b.rfind("f0", 0) == 0;
    if (has_f1 && !p.exact_zero) ok = false;
    std::printf("first-class [%s, %s]: %s%s\n", p.a.c_str(), p.b.c_str(),
                p.weak_zero ? "pass" : "FAIL",
                p.exact_zero ? " (exact)" : (has_f0 ? " (weak)" : ""));
  }

  json report;
  report["first_class"] = first_class_json(fc);
  report["tables"] = json::array();
  for (auto t : {alg::ConjugationTable::T1, alg::ConjugationTable::T2,
                 alg::ConjugationTable::T12}) {
    const auto tr = alg::verify_table(m, t);
    std::printf("table %s: %s (%d/%zu lines)\n", alg::table_name(t).c_str(),
                tr.all_pass ? "pass" : "FAIL",
                static_cast<int>(tr.lines.size()) - tr.failures, tr.lines.size());
    if (!tr.all_pass) ok = false;
    report["tables"].push_back(table_json(tr));
  }
  report["all_pass"] = ok;

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/verify_algebra.json");
    out << report.dump(2) << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return ok ? kExitOk : kExitCheckFailure;
}

int cmd_run(const std::string& config_path, const std::string& preset_name,
            const scenario::RunOptions& opts) {
  scenario::ScenarioConfig cfg;
  if (!preset_name.empty()) {
    cfg = scenario::preset(preset_name);
  } else if (!config_path.empty()) {
    cfg = scenario::parse_config_file(config_path);
  } else {
    throw ConfigError("run: provide --config PATH or --preset NAME");
  }
  const auto res = scenario::run_scenario(cfg, opts);
  for (const auto& c : res.checks) {
    std::printf("%-28s %s  %s\n", c.name.c_str(), c.pass ? "pass" : "FAIL",
                c.detail.c_str());
  }
  if (!opts.out_dir.empty()) {
    std::printf("outputs written to %s\n", opts.out_dir.c_str());
  }
  return res.all_pass ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrfsim: relational dynamics of quantum clocks in a weak gravitational "
               "field — symbolic constraint checks and scenario runs"};
  app.require_subcommand(1);

  std::string config_path, out_dir, preset_name;
  double max_mem = 2048.0;
  double sigma_t = -1.0;
  long long seed = -1;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  std::vector<std::string> batch_paths;

  auto* verify = app.add_subcommand("verify-algebra",
                                    "first-class constraint closure and the frame-change "
                                    "conjugation tables");
  verify->add_option("--config", config_path, "algebra config (JSON)");
  verify->add_option("--out", out_dir, "directory for the JSON report");

  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("--config", config_path, "scenario config (JSON)");
  run->add_option("--preset", preset_name, "bundled preset name");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--max-mem", max_mem, "memory cap in MB");
  run->add_option("--sigma-t", sigma_t, "override the event regularization width");
  run->add_option("--seed", seed, "override the config seed");

  auto* presets = app.add_subcommand("presets", "list bundled presets");
  presets->add_option("--write", out_dir, "write the preset configs as JSON files");

  auto* batch = app.add_subcommand("batch", "run several configs across threads");
  batch->add_option("configs", batch_paths, "config files")->required();
  batch->add_option("--out", out_dir, "output directory (one subdir per config)");
  batch->add_option("--threads", threads, "worker threads");
  batch->add_option("--max-mem", max_mem, "memory cap in MB per scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (verify->parsed()) {
      return cmd_verify_algebra(config_path, out_dir);
    }
    if (run->parsed()) {
      scenario::RunOptions opts;
      opts.out_dir = out_dir;
      opts.max_mem_mb = max_mem;
      if (sigma_t > 0) opts.sigma_t_override = sigma_t;
      if (seed >= 0) opts.seed_override = static_cast<unsigned long long>(seed);
      return cmd_run(config_path, preset_name, opts);
    }
    if (presets->parsed()) {
      for (const auto& p : scenario::preset_list()) {
        std::printf("%-26s %s\n", p.name.c_str(), p.description.c_str());
      }
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& p : scenario::preset_list()) {
          std::ofstream out(out_dir + "/" + p.name + ".json");
          out << scenario::to_json(scenario::preset(p.name)).dump(2) << "\n";
        }
        std::printf("preset configs written to %s\n", out_dir.c_str());
      }
      return kExitOk;
    }
    if (batch->parsed()) {
      scenario::RunOptions opts;
      opts.out_dir = out_dir;
      opts.max_mem_mb = max_mem;
      const auto ok = scenario::run_batch(batch_paths, opts, threads);
      bool all = true;
      for (std::size_t i = 0; i < ok.size(); ++i) {
        std::printf("%-40s %s\n", batch_paths[i].c_str(), ok[i] ? "pass" : "FAIL");
        all = all && ok[i];
      }
      return all ? kExitOk : kExitCheckFailure;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "qrfsim: config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "qrfsim: resource error: %s\n", e.what());
    return kExitResourceError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qrfsim: %s\n", e.what());
    return kExitCheckFailure;
  }
  return kExitConfigError;
}
