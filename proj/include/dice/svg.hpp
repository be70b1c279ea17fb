// Deterministic SVG emitters: fixed viewport, pinned float formatting, no
// timestamps; a comment carries the config hash for provenance.
#pragma once

#include <string>
#include <vector>

#include "dice/ramsey.hpp"
#include "dice/regression.hpp"
#include "dice/solver.hpp"

namespace dice {

// Estimate scatter plus the 2018 quadratic (a = 0.00227).
std::string fig_estimates_svg(const std::string& config_hash);

// The six genealogy curves on [0, 6] degC.
std::string fig_genealogy_svg(const std::string& config_hash);

// State scatter plus the pinned fitted quadratic, curve restricted to
// |dT| <= 6 degC.
std::string fig_states_svg(const QuadraticFit& fit, const std::string& config_hash);

// Sweep overlays, one style per run (solid/dashed/dotted):
//   which = 4: gross and final output (left), damage share (right)
//   which = 5: mu and s (left), abatement share of net output (right)
//   which = 6: K/Y_gross (left), c per capita and carbon price (right)
std::string fig_sweep_svg(int which, const std::vector<SolveReport>& runs,
                          const std::vector<double>& a_values,
                          const std::string& config_hash);

// k-c plane: nullclines, saddle paths from low and high k0, divergent fans.
std::string phase_portrait_svg(const RamseyParams& params, const std::string& config_hash);

} // namespace dice
