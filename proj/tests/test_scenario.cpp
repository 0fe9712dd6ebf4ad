#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qrfsim/errors.hpp"
#include "qrfsim/scenario/presets.hpp"
#include "qrfsim/scenario/runner.hpp"

using namespace qrfsim;
using namespace qrfsim::scenario;
using nlohmann::json;

namespace {

ScenarioConfig small_event_scenario() {
  ScenarioConfig cfg;
  cfg.name = "tiny";
  cfg.regime = model::Regime::Galilean;
  cfg.params.masses = {4.0, 4.0};
  cfg.params.c = 10.0;
  cfg.params.r_min = 1.0;
  AxisSpec q{"q2", frame::AxisRole::RelativePosition, 2, 64, 32.0, -16.0};
  AxisSpec t{"t2", frame::AxisRole::Clock, 2, 64, 12.8, -3.0};
  AxisSpec p{"pointer", frame::AxisRole::Pointer, 0, 2, 2.0, 0.0};
  cfg.axes = {q, t, p};
  BranchSpec b;
  b.amplitude = {1.0, 0.0};
  b.packets["q2"] = PacketSpec{0.0, 1.5, 0.0};
  b.packets["t2"] = PacketSpec{0.0, 0.5, 0.0};
  cfg.branches = {b};
  cfg.has_event = true;
  cfg.event.tau2_star = 2.0;
  cfg.event.sigma_t = 0.4;
  cfg.tau = {16, 4.0, 0.0};
  cfg.dtau = 0.025;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config round trip") {
  for (const auto& info : preset_list()) {
    const auto cfg = preset(info.name);
    const json doc = to_json(cfg);
    const auto reparsed = parse_config(doc);
    CHECK(to_json(reparsed) == doc);
  }
}

TEST_CASE("strict parsing") {
  json doc = to_json(small_event_scenario());
  SUBCASE("unknown top-level key") {
    doc["surprise"] = 1;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("unknown nested key") {
    doc["model"]["extra"] = 2;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("quantity without unit") {
    doc["model"]["GM"] = 1.25;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("bad grid size") {
    doc["axes"][0]["n"] = 17;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("unknown regime") {
    doc["regime"] = "warp";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
}

TEST_CASE("deterministic outputs") {
  const auto cfg = small_event_scenario();
  RunOptions opts;
  namespace fs = std::filesystem;
  const auto base = fs::temp_directory_path() / "qrfsim_det";
  fs::remove_all(base);
  opts.out_dir = (base / "a").string();
  run_scenario(cfg, opts);
  opts.out_dir = (base / "b").string();
  run_scenario(cfg, opts);
  for (const auto& name :
       {"event_distribution.tsv", "marginal_q2.tsv", "marginal_t2.tsv",
        "marginal_pointer.tsv", "marginal_q2_momentum.tsv"}) {
    CHECK(slurp((base / "a" / name).string()) == slurp((base / "b" / name).string()));
    CHECK(!slurp((base / "a" / name).string()).empty());
  }
  fs::remove_all(base);
}

TEST_CASE("memory cap") {
  auto cfg = small_event_scenario();
  RunOptions opts;
  opts.max_mem_mb = 0.01;
  CHECK_THROWS_AS(run_scenario(cfg, opts), ResourceError);
}

TEST_CASE("runner checks pass on the tiny scenario") {
  const auto cfg = small_event_scenario();
  RunOptions opts;
  const auto res = run_scenario(cfg, opts);
  CHECK(res.all_pass);
  REQUIRE(res.distribution.has_value());
  CHECK(res.distribution->monotone);
  REQUIRE(res.predicted_peaks.size() == 1);
  CHECK(res.predicted_peaks[0] == doctest::Approx(2.0));  // galilean: tau2*
  CHECK(res.manifest_json.contains("config_hash"));
  CHECK(res.manifest_json["all_pass"].get<bool>());
}

TEST_CASE("closed-form cross validation through the runner") {
  auto cfg = small_event_scenario();
  cfg.run_closed_form = true;
  RunOptions opts;
  const auto res = run_scenario(cfg, opts);
  CHECK(res.closed_form_max_l2 >= 0.0);
  CHECK(res.closed_form_max_l2 < 1e-4);
  CHECK(res.all_pass);
}

TEST_CASE("preset catalog") {
  const auto list = preset_list();
  REQUIRE(list.size() == 5);
  std::vector<std::string> names;
  for (const auto& p : list) names.push_back(p.name);
  for (const char* expected : {"galilean-event", "sr-two-momenta",
                               "newtonian-two-positions", "schrodinger-limit",
                               "qrf-swap-mirror"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("full history export") {
  auto cfg = small_event_scenario();
  cfg.has_event = false;
  cfg.axes = {cfg.axes[0], cfg.axes[1]};  // drop the pointer
  cfg.tau = {4, 1.0, 0.0};
  cfg.export_full_history = true;
  RunOptions opts;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "qrfsim_hist";
  fs::remove_all(dir);
  opts.out_dir = dir.string();
  run_scenario(cfg, opts);
  const auto body = slurp((dir / "history.tsv").string());
  CHECK(!body.empty());
  // header plus one row per (tau, q2, t2) grid point
  const auto rows = std::count(body.begin(), body.end(), '\n');
  CHECK(rows == 1 + 4 * 64 * 64);
  fs::remove_all(dir);
}
