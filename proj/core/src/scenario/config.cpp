#include "qrfsim/scenario/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>

#include "qrfsim/errors.hpp"

namespace qrfsim::scenario {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, "missing key '" + std::string(key) + "'");
  return obj.at(key);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

/// {"value": x, "unit": "..."} — every physical quantity carries its unit.
double quantity(const json& obj, const char* key, const std::string& where) {
  const auto& q = require(obj, key, where);
  const std::string here = where + "." + key;
  check_keys(q, {"value", "unit"}, here);
  if (!require(q, "unit", here).is_string() || q.at("unit").get<std::string>().empty()) {
    fail(here, "unit must be a nonempty string");
  }
  return number(require(q, "value", here), here + ".value");
}

std::vector<double> quantity_list(const json& obj, const char* key,
                                  const std::string& where) {
  const auto& q = require(obj, key, where);
  const std::string here = where + "." + key;
  check_keys(q, {"value", "unit"}, here);
  if (!require(q, "unit", here).is_string()) fail(here, "unit must be a string");
  const auto& arr = require(q, "value", here);
  if (!arr.is_array()) fail(here, "value must be an array");
  std::vector<double> out;
  for (const auto& v : arr) out.push_back(number(v, here));
  return out;
}

num::Grid1D parse_grid(const json& g, const std::string& where) {
  check_keys(g, {"n", "length", "offset", "unit"}, where);
  const int n = static_cast<int>(number(require(g, "n", where), where + ".n"));
  const double length = number(require(g, "length", where), where + ".length");
  const double offset =
      g.contains("offset") ? number(g.at("offset"), where + ".offset") : 0.0;
  return num::make_uniform_grid(n, length, offset);
}

PacketSpec parse_packet(const json& p, const std::string& where) {
  check_keys(p, {"center", "width", "momentum"}, where);
  PacketSpec spec;
  spec.center = number(require(p, "center", where), where + ".center");
  spec.width = number(require(p, "width", where), where + ".width");
  if (spec.width <= 0) fail(where, "packet width must be positive");
  spec.momentum =
      p.contains("momentum") ? number(p.at("momentum"), where + ".momentum") : 0.0;
  return spec;
}

}  // namespace

std::string kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Evolution:
      return "evolution";
    case ScenarioKind::SchrodingerLimit:
      return "schrodinger_limit";
    case ScenarioKind::QrfSwap:
      return "qrf_swap";
  }
  return "?";
}

ScenarioConfig parse_config(const json& doc) {
  check_keys(doc,
             {"schema_version", "name", "kind", "seed", "regime", "model", "axes",
              "initial_state", "event", "tau_grid", "evolution", "output",
              "schrodinger", "swap"},
             "top level");
  ScenarioConfig cfg;
  cfg.schema_version =
      static_cast<int>(number(require(doc, "schema_version", "top level"), "schema_version"));
  if (cfg.schema_version != 1) fail("schema_version", "unsupported version");
  cfg.name = require(doc, "name", "top level").get<std::string>();
  const std::string kind = doc.contains("kind") ? doc.at("kind").get<std::string>()
                                                : std::string("evolution");
  if (kind == "evolution") {
    cfg.kind = ScenarioKind::Evolution;
  } else if (kind == "schrodinger_limit") {
    cfg.kind = ScenarioKind::SchrodingerLimit;
  } else if (kind == "qrf_swap") {
    cfg.kind = ScenarioKind::QrfSwap;
  } else {
    fail("kind", "unknown scenario kind '" + kind + "'");
  }
  if (doc.contains("seed")) {
    cfg.seed = doc.at("seed").get<unsigned long long>();
  }

  cfg.regime = model::regime_from_name(require(doc, "regime", "top level").get<std::string>());

  {
    const auto& m = require(doc, "model", "top level");
    check_keys(m, {"masses", "GM", "c", "r_min", "q_M"}, "model");
    cfg.params.masses = quantity_list(m, "masses", "model");
    cfg.params.GM = quantity(m, "GM", "model");
    cfg.params.c = quantity(m, "c", "model");
    cfg.params.r_min = quantity(m, "r_min", "model");
    cfg.q_M = m.contains("q_M") ? quantity(m, "q_M", "model") : 0.0;
    cfg.params.validate();
  }

  if (cfg.kind == ScenarioKind::SchrodingerLimit) {
    const auto& s = require(doc, "schrodinger", "top level");
    check_keys(s,
               {"grid", "packet", "total_time", "dtau", "n_samples",
                "quartic_constraint_side", "quartic_reference_side"},
               "schrodinger");
    cfg.schro.params = cfg.params;
    cfg.schro.q_M = cfg.q_M;
    cfg.schro.grid = parse_grid(require(s, "grid", "schrodinger"), "schrodinger.grid");
    const auto pk = parse_packet(require(s, "packet", "schrodinger"), "schrodinger.packet");
    cfg.schro.packet_center = pk.center;
    cfg.schro.packet_width = pk.width;
    cfg.schro.packet_k0 = pk.momentum;
    cfg.schro.total_time = quantity(s, "total_time", "schrodinger");
    cfg.schro.dtau = number(require(s, "dtau", "schrodinger"), "schrodinger.dtau");
    if (s.contains("n_samples")) {
      cfg.schro.n_samples = static_cast<int>(number(s.at("n_samples"), "n_samples"));
    }
    if (s.contains("quartic_constraint_side")) {
      cfg.schro.quartic_constraint_side = s.at("quartic_constraint_side").get<bool>();
    }
    if (s.contains("quartic_reference_side")) {
      cfg.schro.quartic_reference_side = s.at("quartic_reference_side").get<bool>();
    }
    return cfg;
  }

  if (cfg.kind == ScenarioKind::QrfSwap) {
    const auto& s = require(doc, "swap", "top level");
    check_keys(s, {"grid", "packet", "tau_max", "n_snapshots", "dtau"}, "swap");
    if (cfg.params.n_particles() != 2 || cfg.params.masses[0] != cfg.params.masses[1]) {
      fail("swap", "the mirror check needs two equal masses");
    }
    cfg.swap.mass = cfg.params.masses[0];
    cfg.swap.grid = parse_grid(require(s, "grid", "swap"), "swap.grid");
    const auto pk = parse_packet(require(s, "packet", "swap"), "swap.packet");
    cfg.swap.packet_center = pk.center;
    cfg.swap.packet_width = pk.width;
    cfg.swap.packet_k0 = pk.momentum;
    cfg.swap.tau_max = quantity(s, "tau_max", "swap");
    cfg.swap.n_snapshots =
        static_cast<int>(number(require(s, "n_snapshots", "swap"), "swap.n_snapshots"));
    cfg.swap.dtau = number(require(s, "dtau", "swap"), "swap.dtau");
    return cfg;
  }

  {
    const auto& axes = require(doc, "axes", "top level");
    if (!axes.is_array() || axes.empty()) fail("axes", "expected a nonempty array");
    for (const auto& a : axes) {
      const std::string where = "axes[" + std::to_string(cfg.axes.size()) + "]";
      check_keys(a, {"label", "role", "particle", "n", "length", "offset", "unit"}, where);
      AxisSpec spec;
      spec.label = require(a, "label", where).get<std::string>();
      spec.role = frame::axis_role_from_name(require(a, "role", where).get<std::string>());
      spec.particle = a.contains("particle")
                          ? static_cast<int>(number(a.at("particle"), where))
                          : 0;
      spec.n = static_cast<int>(number(require(a, "n", where), where + ".n"));
      if (spec.role == frame::AxisRole::Pointer) {
        spec.length = a.contains("length") ? number(a.at("length"), where) : 2.0;
      } else {
        spec.length = number(require(a, "length", where), where + ".length");
      }
      spec.offset = a.contains("offset") ? number(a.at("offset"), where) : 0.0;
      num::make_uniform_grid(spec.n, spec.length, spec.offset);  // validates
      cfg.axes.push_back(std::move(spec));
    }
  }

  {
    const auto& ini = require(doc, "initial_state", "top level");
    check_keys(ini, {"branches"}, "initial_state");
    const auto& branches = require(ini, "branches", "initial_state");
    if (!branches.is_array() || branches.empty()) {
      fail("initial_state.branches", "expected a nonempty array");
    }
    for (const auto& b : branches) {
      const std::string where =
          "initial_state.branches[" + std::to_string(cfg.branches.size()) + "]";
      check_keys(b, {"amplitude", "packets"}, where);
      BranchSpec spec;
      const auto& amp = require(b, "amplitude", where);
      if (!amp.is_array() || amp.size() != 2) fail(where, "amplitude must be [re, im]");
      spec.amplitude = num::cplx{number(amp[0], where), number(amp[1], where)};
      const auto& packets = require(b, "packets", where);
      if (!packets.is_object()) fail(where, "packets must be an object");
      for (const auto& [axis, p] : packets.items()) {
        spec.packets[axis] = parse_packet(p, where + ".packets." + axis);
      }
      cfg.branches.push_back(std::move(spec));
    }
  }

  if (doc.contains("event") && !doc.at("event").is_null()) {
    const auto& e = doc.at("event");
    check_keys(e, {"tau2_star", "sigma_t", "kick_phase", "mode", "measured_particle"},
               "event");
    cfg.has_event = true;
    cfg.event.tau2_star = quantity(e, "tau2_star", "event");
    cfg.event.sigma_t = quantity(e, "sigma_t", "event");
    if (e.contains("kick_phase")) {
      cfg.event.kick_phase = number(e.at("kick_phase"), "event.kick_phase");
    }
    const std::string mode =
        e.contains("mode") ? e.at("mode").get<std::string>() : std::string("pointer");
    if (mode == "pointer") {
      cfg.event.mode = event::EventSpec::Mode::Pointer;
    } else if (mode == "phase") {
      cfg.event.mode = event::EventSpec::Mode::Phase;
    } else {
      fail("event.mode", "expected 'pointer' or 'phase'");
    }
    if (e.contains("measured_particle")) {
      cfg.event.measured_particle =
          static_cast<int>(number(e.at("measured_particle"), "event.measured_particle"));
    }
  }

  {
    const auto& t = require(doc, "tau_grid", "top level");
    check_keys(t, {"n", "length", "offset", "unit"}, "tau_grid");
    cfg.tau.n = static_cast<int>(number(require(t, "n", "tau_grid"), "tau_grid.n"));
    cfg.tau.length = number(require(t, "length", "tau_grid"), "tau_grid.length");
    cfg.tau.offset = t.contains("offset") ? number(t.at("offset"), "tau_grid.offset") : 0.0;
    num::make_uniform_grid(cfg.tau.n, cfg.tau.length, cfg.tau.offset);
  }

  {
    const auto& ev = require(doc, "evolution", "top level");
    check_keys(ev, {"dtau"}, "evolution");
    cfg.dtau = number(require(ev, "dtau", "evolution"), "evolution.dtau");
    if (cfg.dtau <= 0) fail("evolution.dtau", "must be positive");
  }

  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    check_keys(o, {"full_history", "closed_form"}, "output");
    if (o.contains("full_history")) cfg.export_full_history = o.at("full_history").get<bool>();
    if (o.contains("closed_form")) cfg.run_closed_form = o.at("closed_form").get<bool>();
  }

  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

namespace {

json qty(double v, const char* unit) { return json{{"value", v}, {"unit", unit}}; }

json grid_json(const num::Grid1D& g, const char* unit) {
  return json{{"n", g.n}, {"length", g.length()}, {"offset", g.offset}, {"unit", unit}};
}

json packet_json(double center, double width, double momentum) {
  return json{{"center", center}, {"width", width}, {"momentum", momentum}};
}

}  // namespace

json to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["schema_version"] = cfg.schema_version;
  doc["name"] = cfg.name;
  doc["kind"] = kind_name(cfg.kind);
  doc["seed"] = cfg.seed;
  doc["regime"] = model::regime_name(cfg.regime);
  doc["model"] = {
      {"masses", json{{"value", cfg.params.masses}, {"unit", "mass"}}},
      {"GM", qty(cfg.params.GM, "length*velocity^2")},
      {"c", qty(cfg.params.c, "velocity")},
      {"r_min", qty(cfg.params.r_min, "length")},
      {"q_M", qty(cfg.q_M, "length")},
  };
  if (cfg.kind == ScenarioKind::SchrodingerLimit) {
    doc["schrodinger"] = {
        {"grid", grid_json(cfg.schro.grid, "length")},
        {"packet",
         packet_json(cfg.schro.packet_center, cfg.schro.packet_width, cfg.schro.packet_k0)},
        {"total_time", qty(cfg.schro.total_time, "time")},
        {"dtau", cfg.schro.dtau},
        {"n_samples", cfg.schro.n_samples},
        {"quartic_constraint_side", cfg.schro.quartic_constraint_side},
        {"quartic_reference_side", cfg.schro.quartic_reference_side},
    };
    return doc;
  }
  if (cfg.kind == ScenarioKind::QrfSwap) {
    doc["swap"] = {
        {"grid", grid_json(cfg.swap.grid, "length")},
        {"packet",
         packet_json(cfg.swap.packet_center, cfg.swap.packet_width, cfg.swap.packet_k0)},
        {"tau_max", qty(cfg.swap.tau_max, "time")},
        {"n_snapshots", cfg.swap.n_snapshots},
        {"dtau", cfg.swap.dtau},
    };
    return doc;
  }

  doc["axes"] = json::array();
  for (const auto& a : cfg.axes) {
    json ax = {{"label", a.label},
               {"role", frame::axis_role_name(a.role)},
               {"n", a.n},
               {"length", a.length},
               {"offset", a.offset},
               {"unit", a.role == frame::AxisRole::Clock ? "time" : "length"}};
    if (a.particle) ax["particle"] = a.particle;
    doc["axes"].push_back(std::move(ax));
  }
  doc["initial_state"] = {{"branches", json::array()}};
  for (const auto& b : cfg.branches) {
    json packets = json::object();
    for (const auto& [axis, p] : b.packets) {
      packets[axis] = packet_json(p.center, p.width, p.momentum);
    }
    doc["initial_state"]["branches"].push_back(
        {{"amplitude", {b.amplitude.real(), b.amplitude.imag()}},
         {"packets", std::move(packets)}});
  }
  if (cfg.has_event) {
    doc["event"] = {
        {"tau2_star", qty(cfg.event.tau2_star, "time")},
        {"sigma_t", qty(cfg.event.sigma_t, "time")},
        {"kick_phase", cfg.event.kick_phase},
        {"mode", cfg.event.mode == event::EventSpec::Mode::Pointer ? "pointer" : "phase"},
        {"measured_particle", cfg.event.measured_particle},
    };
  }
  doc["tau_grid"] = {{"n", cfg.tau.n},
                     {"length", cfg.tau.length},
                     {"offset", cfg.tau.offset},
                     {"unit", "time"}};
  doc["evolution"] = {{"dtau", cfg.dtau}};
  doc["output"] = {{"full_history", cfg.export_full_history},
                   {"closed_form", cfg.run_closed_form}};
  return doc;
}

num::WaveFunction build_initial_state(const ScenarioConfig& cfg) {
  std::vector<num::Axis> axes;
  for (const auto& a : cfg.axes) {
    axes.push_back(num::Axis{num::make_uniform_grid(a.n, a.length, a.offset), a.label,
                             num::Basis::Position});
  }
  num::WaveFunction psi = num::WaveFunction::zeros(axes);

  for (const auto& branch : cfg.branches) {
    // per-axis profiles
    std::vector<std::vector<num::cplx>> profiles;
    for (std::size_t a = 0; a < cfg.axes.size(); ++a) {
      const auto& spec = cfg.axes[a];
      const auto& grid = axes[a].grid;
      if (spec.role == frame::AxisRole::Pointer) {
        std::vector<num::cplx> prof(static_cast<std::size_t>(grid.n), num::cplx{0, 0});
        prof[0] = num::cplx{1.0 / std::sqrt(grid.spacing), 0.0};
        profiles.push_back(std::move(prof));
        continue;
      }
      const auto it = branch.packets.find(spec.label);
      if (it == branch.packets.end()) {
        throw ConfigError("branch missing packet for axis '" + spec.label + "'");
      }
      profiles.push_back(
          num::gaussian_profile(grid, it->second.center, it->second.width,
                                it->second.momentum));
    }
    // tensor product, added with the branch amplitude
    std::vector<std::size_t> dims(cfg.axes.size());
    for (std::size_t a = 0; a < cfg.axes.size(); ++a) {
      dims[a] = static_cast<std::size_t>(axes[a].grid.n);
    }
    std::vector<std::size_t> idx(cfg.axes.size(), 0);
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
      num::cplx v = branch.amplitude;
      for (std::size_t a = 0; a < cfg.axes.size(); ++a) v *= profiles[a][idx[a]];
      psi.amplitudes()[flat] += v;
      for (std::size_t a = cfg.axes.size(); a-- > 0;) {
        if (++idx[a] < dims[a]) break;
        idx[a] = 0;
      }
    }
  }
  psi.normalize();
  return psi;
}

frame::AxisLayout layout_of(const ScenarioConfig& cfg) {
  frame::AxisLayout layout;
  for (const auto& a : cfg.axes) {
    layout.entries.push_back({a.label, a.role, a.particle});
  }
  return layout;
}

std::string config_hash(const json& doc) {
  const std::string s = doc.dump();
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return buf;
}

}  // namespace qrfsim::scenario
