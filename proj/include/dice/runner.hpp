// CLI front end: solve, sweep, figures, ramsey, regress subcommands.
// Exit codes: 0 converged/ok, 1 usage or internal error, 2 infeasible.
#pragma once

#include <string>

#include "dice/solver.hpp"

namespace dice {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutDirEnvVar = "DICE_OUT";

int run_cli(int argc, const char* const* argv);

// Deterministic serializations (no wall-clock content). The manifest is the
// one run artifact that does carry timing and is therefore not a golden file.
std::string report_text(const SolveReport& report, const ModelConfig& cfg);
std::string trajectory_csv(const Trajectory& trajectory);
std::string sweep_summary_csv(const std::vector<SolveReport>& runs,
                              const std::vector<double>& a_values);

} // namespace dice
