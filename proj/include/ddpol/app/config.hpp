#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddpol/potential.hpp"
#include "ddpol/quadrature.hpp"
#include "ddpol/units.hpp"

namespace ddpol::app {

enum class OutputFormat { csv, json };
enum class MethodSelection { closed_form, quadrature, grid, all };

/// Explicit well for the N-delta path: position in angstrom, g' in 1/angstrom.
struct WellSpec {
  double position_angstrom = 0.0;
  double strength_per_angstrom = 0.0;
};

struct RunConfig {
  // particle.*
  double mass = 1.0;
  double charge = 1.0;
  // potential.*
  double p = 0.5;
  double separation_angstrom = 1.0;  ///< 2a
  std::vector<WellSpec> wells;       ///< overrides p / separation when non-empty
  bool allow_degenerate = false;
  // sweep.*
  double omega_min = 0.01;
  double omega_max = 0.98;
  int points = 50;
  double threshold_exclusion = 1e-6;
  double pole_exclusion = 1e-6;
  // method
  MethodSelection method = MethodSelection::closed_form;
  // output.*
  std::string output_path;  ///< empty: standard output
  OutputFormat format = OutputFormat::csv;
  bool si = true;
  bool diagnostics = false;
  // static.*
  std::vector<double> p_list;
  // numerics
  QuadratureSpec quadrature;
  double grid_box_factor = 30.0;
  double box_factor = 40.0;

  /// Throws ConfigError on invalid values.
  void validate() const;
};

/// Applies one dotted key (e.g. "sweep.points") to the config.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads `key = value` lines; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

MethodSelection parse_method(const std::string& s);
OutputFormat parse_format(const std::string& s);
std::string to_string(MethodSelection m);
std::vector<double> parse_list(const std::string& s);
std::vector<WellSpec> parse_wells(const std::string& s);

/// The system a config describes, in internal units.
struct Problem {
  ScaledParams scaled;
  DeltaPotential potential;
  bool double_well = false;  ///< symmetric equal-strength pair, closed forms apply
};

/// Builds the problem for the config's p (or `p_override` when given).
/// Throws DegenerateRegionError for p >= 5 without allow_degenerate.
Problem make_problem(const RunConfig& cfg);
Problem make_problem(const RunConfig& cfg, double p_override);

}  // namespace ddpol::app
