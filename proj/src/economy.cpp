#include "dice/economy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dice {

double gross_output(double tfp, double labor, double capital, double gamma) {
    if (!(tfp > 0.0) || !(labor > 0.0) || !(capital > 0.0))
        throw std::invalid_argument("gross_output: inputs must be positive");
    return tfp * std::pow(labor, 1.0 - gamma) * std::pow(capital, gamma);
}

double industrial_emissions(double mu, double sigma, double y_gross) {
    return (1.0 - mu) * sigma * y_gross;
}

double abatement_cost(double mu, double sigma, double y_gross,
                      double p_bs_trillions, double theta2) {
    if (mu < 0.0)
        throw std::invalid_argument("abatement_cost: mu must be >= 0");
    return p_bs_trillions * std::pow(mu, theta2) / theta2 * sigma * y_gross;
}

double carbon_tax(double p_c, double mu, double sigma, double y_gross) {
    return p_c * kUsdPerTco2ToTrillions * industrial_emissions(mu, sigma, y_gross);
}

double optimal_mitigation(double p_c, double p_bs, double theta2, double mu_cap) {
    if (!(p_bs > 0.0))
        throw std::invalid_argument("optimal_mitigation: p_bs must be > 0");
    if (p_c <= 0.0) return 0.0;
    double mu = std::pow(p_c / p_bs, 1.0 / (theta2 - 1.0));
    return std::min(mu, mu_cap);
}

double carbon_price_for(double mu, double p_bs, double theta2) {
    if (mu < 0.0)
        throw std::invalid_argument("carbon_price_for: mu must be >= 0");
    return std::pow(mu, theta2 - 1.0) * p_bs;
}

double step_capital(double k, double y_final, double s, double delta,
                    int step_years, double floor) {
    double next = k * std::pow(1.0 - delta, step_years) + step_years * s * y_final;
    return std::max(next, floor);
}

TransitionResult period_transition(const EconomyState& econ,
                                   const ClimateState& climate,
                                   double s, double mu, int t,
                                   const ModelConfig& cfg,
                                   const ExogenousPaths& paths,
                                   const ClimateParams& cp) {
    const int n = cfg.grid.periods;
    const double h = cfg.grid.step_years;
    const double labor = paths.L[t] / 1000.0;

    double y_gross = gross_output(paths.A[t], labor, econ.k, cfg.gamma);

    bool clamped = false;
    double dt = std::max(climate.t_at, 0.0);
    double dfrac = damage_fraction(cfg.damage, dt, &clamped);
    ChannelEffect eff = damage_channel_apply(cfg.damage, dt, paths.A[t], econ.k,
                                             y_gross, cfg.gamma);
    double y_net = eff.y_net;

    double pbs_trillions = paths.p_bs[t] * kUsdPerTco2ToTrillions;
    double ac = abatement_cost(mu, paths.sigma[t], y_gross, pbs_trillions,
                               cfg.theta2);
    double lambda = y_net > 0.0 ? ac / y_net : 0.0;
    double y_final = (1.0 - lambda) * y_net;

    double consumption = (1.0 - s) * y_final;  // trillions USD/yr
    double cpc = 1000.0 * consumption / paths.L[t];

    double e_ind = industrial_emissions(mu, paths.sigma[t], y_gross);
    double e_total = e_ind + paths.e_exo[t];

    TransitionResult r{};
    r.record.year = paths.years[t];
    r.record.y_gross = y_gross;
    r.record.y_net = y_net;
    r.record.y_final = y_final;
    r.record.damage_frac = dfrac;
    r.record.lambda = lambda;
    r.record.e_ind = e_ind;
    r.record.e_total = e_total;
    r.record.mu = mu;
    r.record.s = s;
    r.record.c_percap = cpc;
    r.record.p_c = carbon_price_for(mu, paths.p_bs[t], cfg.theta2);
    r.record.k_over_y = econ.k / y_gross;
    r.record.t_at = climate.t_at;
    r.damage_clamped = clamped;

    double k_next = step_capital(eff.k_adj, y_final, s, cfg.delta,
                                 cfg.grid.step_years, cfg.floors.capital);
    r.floor_hit = k_next <= cfg.floors.capital;
    r.econ.k = k_next;

    ClimateState carbon = step_carbon(climate, h * e_total, cp);
    int f_index = std::min(t + 1, n - 1);
    double f = forcing(carbon.m_at, cp, f_index);
    r.climate = step_temperature(carbon, f, cp);
    return r;
}

} // namespace dice
