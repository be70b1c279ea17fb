// Three-reservoir carbon cycle, radiative forcing, two-layer temperature.
// Pure state-transition functions; matrices are per-period (5-year default);
// changing step_years requires re-derived coefficients.
#pragma once

#include <vector>

#include "dice/config.hpp"

namespace dice {

struct ClimateState {
    double m_at;  // GtC
    double m_up;  // GtC
    double m_lo;  // GtC
    double t_at;  // degC above pre-industrial
    double t_lo;  // degC
};

struct ClimateParams {
    // transfer[to][from]; columns sum to 1 so carbon is conserved
    double transfer[3][3];
    double m_pre;  // pre-industrial atmospheric stock in the forcing log, GtC
    double f2x;    // W/m2 per doubling
    double ecs;    // degC per doubling
    double c1, c3, c4;
    std::vector<double> f_exo;  // W/m2 per period
    double gtco2_per_gtc;
};

// Builds per-period params from config; validates column sums to 1e-12.
ClimateParams climate_params(const ModelConfig& cfg, const ExogenousPaths& paths);

ClimateState initial_climate_state(const ModelConfig& cfg);

// One period of reservoir mixing plus injection of emissions (GtCO2 over the
// period, may be negative) into the atmosphere. Total mass changes exactly by
// the injected amount. Throws std::invalid_argument on non-finite input.
ClimateState step_carbon(const ClimateState& s, double emissions_gtco2,
                         const ClimateParams& p);

// f2x*log2(m_at/m_pre) + f_exo(t). Throws std::invalid_argument for m_at <= 0.
double forcing(double m_at, const ClimateParams& p, int t);

// Two-layer update: t_at gains c1*(F - (f2x/ecs)*t_at - c3*(t_at - t_lo));
// t_lo relaxes toward t_at at rate c4. Old-state values on the right side.
ClimateState step_temperature(const ClimateState& s, double f,
                              const ClimateParams& p);

} // namespace dice
