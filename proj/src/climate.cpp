#include "dice/climate.hpp"

#include <cmath>
#include <stdexcept>

namespace dice {

ClimateParams climate_params(const ModelConfig& cfg, const ExogenousPaths& paths) {
    const ClimateConfig& c = cfg.climate;
    ClimateParams p{};
    double b12 = c.b12;
    double b23 = c.b23;
    double b21 = b12 * c.mateq / c.mueq;
    double b32 = b23 * c.mueq / c.mleq;
    p.transfer[0][0] = 1.0 - b12;
    p.transfer[1][0] = b12;
    p.transfer[2][0] = 0.0;
    p.transfer[0][1] = b21;
    p.transfer[1][1] = 1.0 - b21 - b23;
    p.transfer[2][1] = b23;
    p.transfer[0][2] = 0.0;
    p.transfer[1][2] = b32;
    p.transfer[2][2] = 1.0 - b32;
    for (int j = 0; j < 3; ++j) {
        double col = p.transfer[0][j] + p.transfer[1][j] + p.transfer[2][j];
        if (std::fabs(col - 1.0) > 1e-12)
            throw std::invalid_argument("carbon transfer column does not sum to 1");
        for (int i = 0; i < 3; ++i)
            if (p.transfer[i][j] < 0.0)
                throw std::invalid_argument("carbon transfer entry is negative");
    }
    p.m_pre = c.mateq;
    p.f2x = c.f2x;
    p.ecs = c.ecs;
    p.c1 = c.c1;
    p.c3 = c.c3;
    p.c4 = c.c4;
    p.f_exo = paths.f_exo;
    p.gtco2_per_gtc = c.gtco2_per_gtc;
    return p;
}

ClimateState initial_climate_state(const ModelConfig& cfg) {
    return ClimateState{cfg.climate.mat0, cfg.climate.mu0, cfg.climate.ml0,
                        cfg.climate.tatm0, cfg.climate.tocean0};
}

ClimateState step_carbon(const ClimateState& s, double emissions_gtco2,
                         const ClimateParams& p) {
    if (!std::isfinite(s.m_at) || !std::isfinite(s.m_up) || !std::isfinite(s.m_lo) ||
        !std::isfinite(emissions_gtco2))
        throw std::invalid_argument("step_carbon: non-finite input");
    const double m[3] = {s.m_at, s.m_up, s.m_lo};
    double next[3];
    for (int i = 0; i < 3; ++i)
        next[i] = p.transfer[i][0] * m[0] + p.transfer[i][1] * m[1] +
                  p.transfer[i][2] * m[2];
    next[0] += emissions_gtco2 / p.gtco2_per_gtc;
    ClimateState out = s;
    out.m_at = next[0];
    out.m_up = next[1];
    out.m_lo = next[2];
    return out;
}

double forcing(double m_at, const ClimateParams& p, int t) {
    if (!(m_at > 0.0))
        throw std::invalid_argument("forcing: atmospheric stock must be positive");
    size_t idx = static_cast<size_t>(t) < p.f_exo.size() ? static_cast<size_t>(t)
                                                         : p.f_exo.size() - 1;
    return p.f2x * std::log2(m_at / p.m_pre) + p.f_exo[idx];
}

ClimateState step_temperature(const ClimateState& s, double f,
                              const ClimateParams& p) {
    ClimateState out = s;
    out.t_at = s.t_at + p.c1 * (f - (p.f2x / p.ecs) * s.t_at - p.c3 * (s.t_at - s.t_lo));
    out.t_lo = s.t_lo + p.c4 * (s.t_at - s.t_lo);
    return out;
}

} // namespace dice
