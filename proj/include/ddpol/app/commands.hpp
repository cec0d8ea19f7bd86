#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddpol/app/config.hpp"

namespace ddpol::app {

/// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_degenerate = 3;
inline constexpr int exit_convergence = 4;

/// Frequencies a sweep visits: uniform over [min, max], minus the threshold
/// exclusion zone, plus the resonance itself when it lies inside the range.
std::vector<double> sweep_frequencies(const RunConfig& cfg, const Problem& problem);

/// Each command writes its data to `out` (or cfg.output_path) and returns an
/// exit code; errors other than non-convergence propagate as exceptions.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_static_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_resonance(const RunConfig& cfg, std::ostream& out);
int cmd_bound_states(const RunConfig& cfg, std::ostream& out);

/// Figure presets: 1a, 1b, 2a, 2b (sweeps) and 3 (static table).
RunConfig apply_figure(RunConfig cfg, const std::string& figure);

/// Full command-line entry point, mapping exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ddpol::app
