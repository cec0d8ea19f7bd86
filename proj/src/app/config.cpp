#include "ddpol/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ddpol/errors.hpp"

namespace ddpol::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

}  // namespace

MethodSelection parse_method(const std::string& s) {
  if (s == "closed_form") return MethodSelection::closed_form;
  if (s == "quadrature") return MethodSelection::quadrature;
  if (s == "grid") return MethodSelection::grid;
  if (s == "all") return MethodSelection::all;
  throw ConfigError("method must be closed_form, quadrature, grid or all, got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("format must be csv or json, got '" + s + "'");
}

std::string to_string(MethodSelection m) {
  switch (m) {
    case MethodSelection::closed_form: return "closed_form";
    case MethodSelection::quadrature: return "quadrature";
    case MethodSelection::grid: return "grid";
    case MethodSelection::all: return "all";
  }
  return "?";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("list", item));
  }
  return out;
}

std::vector<WellSpec> parse_wells(const std::string& s) {
  std::vector<WellSpec> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("potential.wells: expected position:strength, got '" + item + "'");
    out.push_back({to_double("potential.wells", trim(item.substr(0, colon))),
                   to_double("potential.wells", trim(item.substr(colon + 1)))});
  }
  return out;
}

void set_key(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "particle.mass") c.mass = to_double(key, v);
  else if (key == "particle.charge") c.charge = to_double(key, v);
  else if (key == "potential.p") c.p = to_double(key, v);
  else if (key == "potential.separation_angstrom") c.separation_angstrom = to_double(key, v);
  else if (key == "potential.wells") c.wells = parse_wells(v);
  else if (key == "potential.allow_degenerate") c.allow_degenerate = to_bool(key, v);
  else if (key == "sweep.omega_min") c.omega_min = to_double(key, v);
  else if (key == "sweep.omega_max") c.omega_max = to_double(key, v);
  else if (key == "sweep.points") {
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e7) throw ConfigError(key + ": expected an integer");
    c.points = static_cast<int>(d);
  } else if (key == "sweep.threshold_exclusion") c.threshold_exclusion = to_double(key, v);
  else if (key == "sweep.pole_exclusion") c.pole_exclusion = to_double(key, v);
  else if (key == "method") c.method = parse_method(v);
  else if (key == "output.path") c.output_path = v;
  else if (key == "output.format") c.format = parse_format(v);
  else if (key == "output.units") {
    if (v == "si") c.si = true;
    else if (v == "atomic") c.si = false;
    else throw ConfigError(key + ": expected si or atomic");
  } else if (key == "output.diagnostics") c.diagnostics = to_bool(key, v);
  else if (key == "static.p_list") c.p_list = parse_list(v);
  else if (key == "quadrature.rel_tol") c.quadrature.rel_tol = to_double(key, v);
  else if (key == "quadrature.abs_tol") c.quadrature.abs_tol = to_double(key, v);
  else if (key == "quadrature.limit") {
    const double d = to_double(key, v);
    if (!(d >= 1.0) || d != std::floor(d) || d > 1e7) throw ConfigError(key + ": expected a positive integer");
    c.quadrature.limit = static_cast<std::size_t>(d);
  } else if (key == "grid.box_factor") c.grid_box_factor = to_double(key, v);
  else if (key == "box.box_factor") c.box_factor = to_double(key, v);
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config(std::istream& in, RunConfig c) {
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(n) + ": expected key = value");
    set_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(mass > 0.0) || !std::isfinite(mass)) fail("particle.mass must be positive");
  if (charge == 0.0 || !std::isfinite(charge)) fail("particle.charge must be non-zero");
  if (wells.empty()) {
    if (!(p > 0.0) || !std::isfinite(p)) fail("potential.p must be positive");
    if (!(separation_angstrom > 0.0) || !std::isfinite(separation_angstrom))
      fail("potential.separation_angstrom must be positive");
  }
  if (!(omega_min > 0.0) || !std::isfinite(omega_min)) fail("sweep.omega_min must be positive");
  if (!(omega_max > omega_min) || !std::isfinite(omega_max)) fail("sweep.omega_max must exceed sweep.omega_min");
  if (points < 2) fail("sweep.points must be at least 2");
  if (!(threshold_exclusion >= 1e-6)) fail("sweep.threshold_exclusion must be >= 1e-6");
  if (!(pole_exclusion >= 1e-6)) fail("sweep.pole_exclusion must be >= 1e-6");
  if (!(quadrature.rel_tol > 0.0) || !(quadrature.abs_tol > 0.0)) fail("quadrature tolerances must be positive");
  if (!(grid_box_factor > 0.0) || !(box_factor > 0.0)) fail("box factors must be positive");
}

Problem make_problem(const RunConfig& cfg) { return make_problem(cfg, cfg.p); }

Problem make_problem(const RunConfig& cfg, double p) {
  if (cfg.wells.empty()) {
    const ScaledParams s = build_scaled({cfg.mass, cfg.charge, 0.5 * cfg.separation_angstrom}, p, cfg.allow_degenerate);
    return {s, DeltaPotential::symmetric_double(s.a, s.g_prime), true};
  }
  std::vector<Well> wells;
  for (const auto& w : cfg.wells) {
    if (!(w.strength_per_angstrom > 0.0)) throw ConfigError("potential.wells: strengths must be positive");
    wells.push_back({w.position_angstrom * constants::bohr_per_angstrom,
                     w.strength_per_angstrom / constants::bohr_per_angstrom});
  }
  std::sort(wells.begin(), wells.end(), [](const Well& x, const Well& y) { return x.position < y.position; });
  DeltaPotential v(wells);  // validates spacing and signs
  if (v.size() == 2 && std::abs(v[0].position + v[1].position) < 1e-12 * std::abs(v[1].position) &&
      std::abs(v[0].strength - v[1].strength) < 1e-12 * v[0].strength) {
    const double a = v[1].position;
    const double pe = 2.0 * v[0].strength * a;
    const ScaledParams s = build_scaled({cfg.mass, cfg.charge, a / constants::bohr_per_angstrom}, pe,
                                        cfg.allow_degenerate);
    return {s, v, true};
  }
  ScaledParams s = particle_only(cfg.mass, cfg.charge);
  s.allow_degenerate = cfg.allow_degenerate;
  return {s, v, false};
}

}  // namespace ddpol::app
