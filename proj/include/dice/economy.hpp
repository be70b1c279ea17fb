// Per-period economics: production, damage and abatement wedges, emissions,
// carbon price algebra, capital accumulation. Pure and reentrant.
//
// Units: output in trillions USD2005/yr, emissions GtCO2/yr, prices USD/tCO2,
// temperature degC. USD/tCO2 times GtCO2/yr converts to trillions USD/yr by
// the single constant below.
#pragma once

#include "dice/climate.hpp"
#include "dice/config.hpp"

namespace dice {

inline constexpr double kUsdPerTco2ToTrillions = 1e-3;

struct EconomyState {
    double k;  // trillions USD2005
};

struct PeriodRecord {
    int year;
    double y_gross;      // trillions USD2005/yr
    double y_net;        // after damages
    double y_final;      // after damages and abatement
    double damage_frac;  // D(t_at)
    double lambda;       // abatement cost share of net output
    double e_ind;        // GtCO2/yr
    double e_total;      // industrial + land use
    double mu;
    double s;
    double c_percap;     // thousand USD2005/yr
    double p_c;          // USD/tCO2
    double k_over_y;     // capital over GROSS output, years
    double t_at;         // degC
};

// A*L^(1-gamma)*K^gamma. Callers pass L in the production normalization
// (population/1000 for the engine). Throws on non-positive inputs.
double gross_output(double tfp, double labor, double capital, double gamma);

// (1-mu)*sigma*y_gross; negative when mu > 1 (net sequestration).
double industrial_emissions(double mu, double sigma, double y_gross);

// (p_bs*mu^theta2/theta2)*sigma*y_gross with p_bs already scaled to
// trillions USD per GtCO2 (USD/tCO2 * kUsdPerTco2ToTrillions).
double abatement_cost(double mu, double sigma, double y_gross,
                      double p_bs_trillions, double theta2);

// p_c in USD/tCO2; returns trillions USD/yr.
double carbon_tax(double p_c, double mu, double sigma, double y_gross);

// argmin over mu of carbon tax plus abatement cost:
// min{(p_c/p_bs)^(1/(theta2-1)), mu_cap}.
double optimal_mitigation(double p_c, double p_bs, double theta2, double mu_cap);

// mu^(theta2-1)*p_bs; round-trips with optimal_mitigation below the cap.
double carbon_price_for(double mu, double p_bs, double theta2);

// k*(1-delta)^step_years + step_years*s*y_final, floored away from zero.
double step_capital(double k, double y_final, double s, double delta,
                    int step_years, double floor = 1e-6);

struct TransitionResult {
    EconomyState econ;      // next period
    ClimateState climate;   // next period
    PeriodRecord record;    // this period
    bool floor_hit;         // capital floor activated
    bool damage_clamped;    // damage family evaluated outside validated range
};

// One coupled period: production, wedges, emissions, climate step with this
// period's emissions (forcing uses next period's exogenous component), and
// capital step with this period's final output. Damages evaluate at
// max(t_at, 0) through the configured channel.
TransitionResult period_transition(const EconomyState& econ,
                                   const ClimateState& climate,
                                   double s, double mu, int t,
                                   const ModelConfig& cfg,
                                   const ExogenousPaths& paths,
                                   const ClimateParams& cp);

} // namespace dice
