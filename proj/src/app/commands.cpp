#include "ddpol/app/commands.hpp"

#include <gsl/gsl_version.h>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <boost/version.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <thread>

#include "ddpol/bound_states.hpp"
#include "ddpol/closed_form.hpp"
#include "ddpol/errors.hpp"
#include "ddpol/oracle.hpp"
#include "ddpol/printed_forms.hpp"

namespace ddpol::app {

namespace {

using json = nlohmann::ordered_json;
constexpr const char* tool_version = "0.1.0";
constexpr const char* csv_header = "omega_over_omegaB,re_alpha,im_alpha,regime,method,pole_proximity";

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no negative zero in output
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Runs f(i) for i in [0, n) on a small thread pool. Results are stored by the
// caller per index, so completion order never shows in the output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) f(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
}

// Frequencies (in omega_B) at which alpha has a below-threshold pole.
std::vector<double> resonances(const Problem& pr) {
  if (pr.double_well) {
    if (auto r = resonance_locate(pr.scaled)) return {*r};
    return {};
  }
  const auto spec = multi_delta_spectrum(pr.potential);
  std::vector<double> out;
  const double k0 = spec.states.front().kappa;
  for (std::size_t i = 1; i < spec.states.size(); ++i) {
    const double k = spec.states[i].kappa;
    out.push_back(1.0 - (k * k) / (k0 * k0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> pole_distance(double w, const std::vector<double>& poles) {
  if (poles.empty()) return std::nullopt;
  double d = std::numeric_limits<double>::infinity();
  for (double r : poles) d = std::min(d, std::abs(w - r));
  return d;
}

std::vector<Method> methods_for(const RunConfig& cfg, const Problem& pr) {
  switch (cfg.method) {
    case MethodSelection::closed_form:
      if (!pr.double_well) throw ConfigError("closed_form covers the symmetric double well only; use quadrature or grid");
      return {Method::closed_form};
    case MethodSelection::quadrature: return {Method::quadrature};
    case MethodSelection::grid: return {Method::grid};
    case MethodSelection::all:
      if (pr.double_well) return {Method::closed_form, Method::quadrature, Method::grid};
      return {Method::quadrature, Method::grid};
  }
  return {};
}

PolarizabilityPoint evaluate(const RunConfig& cfg, const Problem& pr, Method m, double w,
                             const std::vector<double>& poles) {
  const auto prox = pole_distance(w, poles);
  PolarizabilityPoint pt;
  if (prox && *prox < cfg.pole_exclusion) {
    pt.omega_over_omegaB = w;
    pt.value = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    pt.regime = FrequencyRegime::below;
    pt.method = m;
    pt.at_pole = true;
  } else if (m == Method::closed_form) {
    pt = alpha_closed_form(w, pr.scaled);
  } else if (m == Method::quadrature) {
    pt = alpha_eq6_quadrature(w, pr.scaled, pr.potential, cfg.quadrature);
  } else {
    GridOptions opt;
    opt.box_factor = cfg.grid_box_factor;
    pt = alpha_grid_inhomogeneous(w, pr.scaled, pr.potential, opt);
  }
  pt.pole_proximity = prox;
  return pt;
}

std::complex<double> in_units(const RunConfig& cfg, std::complex<double> atomic) {
  return cfg.si ? to_si_volume(atomic).value_m3 : atomic;
}

std::string unit_name(const RunConfig& cfg) {
  return cfg.si ? "alpha/(4 pi eps0) in m^3" : "alpha/(4 pi eps0) in atomic units (bohr^3)";
}

json parameters(const RunConfig& cfg, const Problem& pr) {
  json p;
  p["mass_over_me"] = cfg.mass;
  p["charge_over_e"] = cfg.charge;
  if (cfg.wells.empty()) {
    p["p"] = pr.scaled.p;
    p["separation_angstrom"] = cfg.separation_angstrom;
    p["a_bohr"] = pr.scaled.a;
    p["g_prime_per_bohr"] = pr.scaled.g_prime;
  } else {
    json wells = json::array();
    for (const auto& w : cfg.wells) wells.push_back({{"position_angstrom", w.position_angstrom},
                                                     {"strength_per_angstrom", w.strength_per_angstrom}});
    p["wells"] = wells;
  }
  const auto spec = multi_delta_spectrum(pr.potential);
  p["k0_per_bohr"] = spec.states.front().kappa;
  p["omega_B_internal"] = -spec.states.front().energy;
  return p;
}

json metadata(const RunConfig& cfg, const Problem& pr, const std::string& command) {
  json m;
  m["command"] = command;
  m["units"] = unit_name(cfg);
  m["frequency_unit"] = "omega_B = E_B / hbar";
  m["parameters"] = parameters(cfg, pr);
  m["method"] = to_string(cfg.method);
  m["versions"] = {{"ddpol", tool_version},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"gsl", GSL_VERSION},
                   {"boost", BOOST_LIB_VERSION}};
  m["tolerances"] = {{"quadrature_rel_tol", cfg.quadrature.rel_tol},
                     {"quadrature_abs_tol", cfg.quadrature.abs_tol},
                     {"quadrature_limit", cfg.quadrature.limit},
                     {"grid_box_factor", cfg.grid_box_factor},
                     {"box_sum_box_factor", cfg.box_factor},
                     {"threshold_exclusion", cfg.threshold_exclusion},
                     {"pole_exclusion", cfg.pole_exclusion}};
  m["degenerate_guard"] = constants::degenerate_p;
  m["allow_degenerate"] = cfg.allow_degenerate;
  return m;
}

// Writes to cfg.output_path when set, else to `fallback`.
template <class F>
void with_output(const RunConfig& cfg, std::ostream& fallback, F&& body) {
  if (cfg.output_path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + cfg.output_path + "'");
  body(file);
}

}  // namespace

std::vector<double> sweep_frequencies(const RunConfig& cfg, const Problem& pr) {
  std::vector<double> ws;
  for (int i = 0; i < cfg.points; ++i) {
    const double w = cfg.omega_min + (cfg.omega_max - cfg.omega_min) * i / (cfg.points - 1);
    if (std::abs(w - 1.0) >= cfg.threshold_exclusion) ws.push_back(w);
  }
  for (double r : resonances(pr))
    if (r >= cfg.omega_min && r <= cfg.omega_max && std::find(ws.begin(), ws.end(), r) == ws.end()) ws.push_back(r);
  std::sort(ws.begin(), ws.end());
  return ws;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  const Problem pr = make_problem(cfg);
  const auto methods = methods_for(cfg, pr);
  const auto ws = sweep_frequencies(cfg, pr);
  const auto poles = resonances(pr);

  const std::size_t n = ws.size() * methods.size();
  std::vector<PolarizabilityPoint> rows(n);
  std::vector<std::exception_ptr> failures(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      rows[i] = evaluate(cfg, pr, methods[i % methods.size()], ws[i / methods.size()], poles);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });

  // rows up to the first failure are written; the failure decides the exit code
  std::size_t done = n;
  std::string failure;
  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const ConvergenceError& e) {
      done = i;
      failure = e.what();
    }
    break;
  }

  if (cfg.diagnostics && pr.double_well) {
    for (double w : ws) {
      if (auto d = pole_distance(w, poles); d && *d < cfg.pole_exclusion) continue;
      const auto dev = printed_deviation(w, pr.scaled);
      err << "printed-form deviation at omega/omega_B = " << fixed(w, 6) << ": " << num(dev.relative) << "\n";
    }
  }

  with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv) {
      os << "# ddpol sweep; re_alpha, im_alpha: " << unit_name(cfg) << "\n";
      os << "# omega in units of omega_B = E_B/hbar; pole_proximity = |omega - omega_res|/omega_B; nan marks a pole\n";
      os << csv_header << "\n";
      for (std::size_t i = 0; i < done; ++i) {
        const auto& r = rows[i];
        const auto v = in_units(cfg, r.value);
        os << num(r.omega_over_omegaB) << "," << num(v.real()) << "," << num(v.imag()) << "," << to_string(r.regime)
           << "," << to_string(r.method) << "," << (r.pole_proximity ? num(*r.pole_proximity) : "") << "\n";
      }
      if (done < n) os << "# INCOMPLETE: " << failure << "\n";
    } else {
      json doc;
      doc["metadata"] = metadata(cfg, pr, "sweep");
      json arr = json::array();
      for (std::size_t i = 0; i < done; ++i) {
        const auto& r = rows[i];
        const auto v = in_units(cfg, r.value);
        json row;
        row["omega_over_omegaB"] = r.omega_over_omegaB;
        row["re_alpha"] = v.real();
        row["im_alpha"] = v.imag();
        row["regime"] = to_string(r.regime);
        row["method"] = to_string(r.method);
        row["pole_proximity"] = r.pole_proximity ? json(*r.pole_proximity) : json(nullptr);
        row["at_pole"] = r.at_pole;
        arr.push_back(row);
      }
      doc["rows"] = arr;
      doc["incomplete"] = done < n;
      if (done < n) doc["error"] = failure;
      os << doc.dump(2) << "\n";
    }
  });
  if (done < n) {
    err << "error: numeric non-convergence: " << failure << "\n";
    return exit_convergence;
  }
  return exit_ok;
}

int cmd_static_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  if (cfg.p_list.empty()) throw ConfigError("static-table needs a non-empty p list (--p-list or static.p_list)");
  if (!cfg.wells.empty()) throw ConfigError("static-table works with p and separation, not explicit wells");
  std::vector<Problem> problems;
  for (double p : cfg.p_list) problems.push_back(make_problem(cfg, p));

  struct Entry {
    double closed = 0.0;
    StaticSum box;
  };
  std::vector<Entry> entries(problems.size());
  std::vector<std::exception_ptr> failures(problems.size());
  parallel_for(problems.size(), [&](std::size_t i) {
    try {
      entries[i].closed = alpha_static(problems[i].scaled).value.real();
      BoxOptions opt;
      opt.box_factor = cfg.box_factor;
      entries[i].box = alpha_static_sum(problems[i].scaled, problems[i].potential, opt);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  std::size_t done = problems.size();
  std::string failure;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const ConvergenceError& e) {
      done = i;
      failure = e.what();
    }
    break;
  }

  with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv) {
      os << "# ddpol static-table; alpha_static (closed form), alpha_box_sum (sum over box states): " << unit_name(cfg)
         << "\n";
      os << "# box_trk_sum is the dimensionless oscillator-strength sum of the box basis (ideally 1)\n";
      os << "p,alpha_static,alpha_box_sum,box_trk_sum\n";
      for (std::size_t i = 0; i < done; ++i) {
        os << num(cfg.p_list[i]) << "," << num(in_units(cfg, entries[i].closed).real()) << ","
           << num(in_units(cfg, entries[i].box.total).real()) << "," << num(entries[i].box.trk_sum) << "\n";
      }
      if (done < problems.size()) os << "# INCOMPLETE: " << failure << "\n";
    } else {
      json doc;
      doc["metadata"] = metadata(cfg, problems.front(), "static-table");
      json arr = json::array();
      for (std::size_t i = 0; i < done; ++i)
        arr.push_back({{"p", cfg.p_list[i]},
                       {"alpha_static", in_units(cfg, entries[i].closed).real()},
                       {"alpha_box_sum", in_units(cfg, entries[i].box.total).real()},
                       {"box_trk_sum", entries[i].box.trk_sum}});
      doc["rows"] = arr;
      doc["incomplete"] = done < problems.size();
      os << doc.dump(2) << "\n";
    }
  });
  if (done < problems.size()) {
    err << "error: numeric non-convergence: " << failure << "\n";
    return exit_convergence;
  }
  return exit_ok;
}

int cmd_resonance(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const Problem pr = make_problem(cfg);
  if (!pr.double_well) throw ConfigError("resonance works with the symmetric double well");
  const auto& s = pr.scaled;
  const double k0 = solve_even_kappa(s.p, s.a);
  out << "p = " << fixed(s.p, 6) << "\n";
  out << "k0a = " << fixed(k0 * s.a, 10) << "\n";
  const auto k1 = solve_odd_kappa(s.p, s.a);
  const auto res = resonance_locate(s);
  if (!k1 || !res) {
    out << "no second bound state (p <= 1)\n";
    return exit_ok;
  }
  const double dual = 1.0 - (*k1 / k0) * (*k1 / k0);
  out << "k1a = " << fixed(*k1 * s.a, 10) << "\n";
  out << "omega_res/omega_B = " << fixed(*res, 6) << "\n";
  out << "omega_1/omega_B = " << fixed(1.0 - *res, 6) << "\n";
  out << "duality_residual = " << num(std::abs(*res - dual)) << "\n";
  return exit_ok;
}

int cmd_bound_states(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const Problem pr = make_problem(cfg);
  std::vector<BoundState> states;
  bool near_degenerate = false;
  if (pr.double_well) {
    states.push_back(ground_state(pr.scaled.p, pr.scaled.a));
    if (auto odd = odd_state(pr.scaled.p, pr.scaled.a)) states.push_back(*odd);
  } else {
    auto spec = multi_delta_spectrum(pr.potential);
    states = spec.states;
    near_degenerate = spec.near_degenerate;
  }
  auto parity = [](Parity p) { return p == Parity::even ? "even" : p == Parity::odd ? "odd" : "none"; };
  const double omega_b = -states.front().energy;
  with_output(cfg, out, [&](std::ostream& os) {
    os << "# ddpol bound-states; kappa in 1/bohr, energy in hartree (-kappa^2 / 2m)\n";
    if (near_degenerate) os << "# warning: near-degenerate levels\n";
    os << "index,parity,kappa_per_bohr,energy_hartree,binding_over_omegaB\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
      os << i << "," << parity(states[i].parity) << "," << num(states[i].kappa) << ","
         << num(states[i].energy / pr.scaled.mass) << "," << num(-states[i].energy / omega_b) << "\n";
    }
  });
  return exit_ok;
}

RunConfig apply_figure(RunConfig cfg, const std::string& figure) {
  cfg.wells.clear();
  cfg.separation_angstrom = 1.0;
  if (figure == "1a" || figure == "2a") {
    cfg.p = figure == "1a" ? 0.5 : 1.5;
    cfg.omega_min = 0.01;
    cfg.omega_max = 0.98;
    cfg.points = 98;
    cfg.method = MethodSelection::closed_form;
  } else if (figure == "1b" || figure == "2b") {
    cfg.p = figure == "1b" ? 0.5 : 1.5;
    cfg.omega_min = 1.02;
    cfg.omega_max = 4.0;
    cfg.points = 150;
    cfg.method = figure == "1b" ? MethodSelection::closed_form : MethodSelection::all;
  } else if (figure == "3") {
    cfg.p_list.clear();
    for (int i = 1; i <= 19; ++i) cfg.p_list.push_back(0.25 * i);
  } else {
    throw ConfigError("unknown figure '" + figure + "' (expected 1a, 1b, 2a, 2b or 3)");
  }
  return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic polarizability of a particle bound by delta-function wells", "ddpol"};
  app.require_subcommand(1);

  std::optional<std::string> config_path, method, format, figure, output, p_list, wells;
  std::optional<double> p, separation, omega_min, omega_max;
  std::optional<int> points;
  bool si = false, atomic = false, allow_degenerate = false, diagnostics = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value config file");
    sub->add_option("--p", p, "well strength p = 2 m g a / hbar^2");
    sub->add_option("--separation-angstrom", separation, "well separation 2a in angstrom");
    sub->add_option("--wells", wells, "explicit wells 'x:g,x:g' (angstrom, 1/angstrom)");
    sub->add_option("--method", method, "closed_form | quadrature | grid | all");
    sub->add_option("--points", points, "number of sweep frequencies");
    sub->add_option("--omega-min", omega_min, "lowest omega/omega_B");
    sub->add_option("--omega-max", omega_max, "highest omega/omega_B");
    sub->add_option("--format", format, "csv | json");
    sub->add_option("--output", output, "output file (default: stdout)");
    auto* f_si = sub->add_flag("--si", si, "report m^3 (default)");
    auto* f_au = sub->add_flag("--atomic", atomic, "report atomic units");
    f_si->excludes(f_au);
    sub->add_flag("--allow-degenerate", allow_degenerate, "permit p >= 5");
    sub->add_option("--figure", figure, "preset: 1a, 1b, 2a, 2b (sweep) or 3 (static-table)");
  };
  auto* sweep = app.add_subcommand("sweep", "alpha(omega) over a frequency range");
  auto* table = app.add_subcommand("static-table", "alpha(0) for a list of p");
  auto* reso = app.add_subcommand("resonance", "below-threshold pole and odd bound state");
  auto* bound = app.add_subcommand("bound-states", "bound-state decay constants and energies");
  for (auto* sub : {sweep, table, reso, bound}) common(sub);
  sweep->add_flag("--diagnostics", diagnostics, "report deviation of the literal above-threshold term forms on stderr");
  table->add_option("--p-list", p_list, "comma-separated p values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    RunConfig cfg;
    if (config_path) cfg = load_config(*config_path, cfg);
    if (figure) {
      const bool is_table = table->parsed();
      if ((*figure == "3") != is_table) throw ConfigError("figure " + *figure + " does not belong to this command");
      cfg = apply_figure(cfg, *figure);
    }
    if (p) cfg.p = *p;
    if (separation) cfg.separation_angstrom = *separation;
    if (wells) cfg.wells = parse_wells(*wells);
    if (method) cfg.method = parse_method(*method);
    if (points) cfg.points = *points;
    if (omega_min) cfg.omega_min = *omega_min;
    if (omega_max) cfg.omega_max = *omega_max;
    if (format) cfg.format = parse_format(*format);
    if (output) cfg.output_path = *output;
    if (si) cfg.si = true;
    if (atomic) cfg.si = false;
    if (allow_degenerate) cfg.allow_degenerate = true;
    if (diagnostics) cfg.diagnostics = true;
    if (p_list) cfg.p_list = parse_list(*p_list);

    if (sweep->parsed()) return cmd_sweep(cfg, out, err);
    if (table->parsed()) return cmd_static_table(cfg, out, err);
    if (reso->parsed()) return cmd_resonance(cfg, out);
    return cmd_bound_states(cfg, out);
  } catch (const DegenerateRegionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_degenerate;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const ConvergenceError& e) {
    err << "error: numeric non-convergence: " << e.what() << "\n";
    return exit_convergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }
}

}  // namespace ddpol::app
