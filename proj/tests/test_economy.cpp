#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dice/economy.hpp"

using namespace dice;

TEST_CASE("Cobb-Douglas output at the 2015 calibration point") {
    // A=5.115, L=7.403 (billions), K=223
    CHECK(gross_output(5.115, 7.403, 223.0, 0.3) ==
          doctest::Approx(105.17742197545904).epsilon(1e-13));
    CHECK_THROWS_AS(gross_output(0.0, 7.403, 223.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(gross_output(5.115, 7.403, 0.0, 0.3), std::invalid_argument);
}

TEST_CASE("industrial emissions scale with unabated intensity") {
    CHECK(industrial_emissions(0.0, 0.35, 100.0) == doctest::Approx(35.0));
    CHECK(industrial_emissions(1.0, 0.35, 100.0) == 0.0);
    CHECK(industrial_emissions(1.2, 0.35, 100.0) == doctest::Approx(-7.0));
}

TEST_CASE("abatement cost is the convex power law") {
    // (pbs_tr*mu^theta2/theta2)*sigma*y
    CHECK(abatement_cost(1.0, 1.0, 50.0, 0.6, 2.6) ==
          doctest::Approx(11.538461538461538).epsilon(1e-13));
    CHECK(abatement_cost(0.0, 0.35, 100.0, 0.55, 2.6) == 0.0);
    CHECK_THROWS_AS(abatement_cost(-0.1, 0.35, 100.0, 0.55, 2.6), std::invalid_argument);
}

TEST_CASE("closed-form mitigation minimizes tax plus abatement") {
    CHECK(optimal_mitigation(100.0, 550.0, 2.6, 1.0) ==
          doctest::Approx(0.34456671229652797).epsilon(1e-13));
    CHECK(optimal_mitigation(0.0, 550.0, 2.6, 1.0) == 0.0);
    CHECK(optimal_mitigation(-5.0, 550.0, 2.6, 1.0) == 0.0);
    CHECK(optimal_mitigation(9000.0, 550.0, 2.6, 1.0) == 1.0);   // cap binds
    CHECK(optimal_mitigation(550.0, 550.0, 2.6, 1.2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(optimal_mitigation(10.0, 0.0, 2.6, 1.0), std::invalid_argument);
}

TEST_CASE("price-for-mitigation round-trips to 1e-10 on the unit interval") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> pbs_d(10.0, 1000.0);
    std::uniform_real_distribution<double> th(1.2, 4.0);
    for (int i = 0; i < 1000; ++i) {
        double mu = (i == 0) ? 0.0 : (i == 1) ? 1.0 : u(rng);
        double pbs = pbs_d(rng);
        double theta2 = th(rng);
        double p = carbon_price_for(mu, pbs, theta2);
        double back = optimal_mitigation(p, pbs, theta2, 2.0);
        CHECK(std::fabs(back - mu) <= 1e-10);
    }
}

TEST_CASE("closed form agrees with brute-force cost minimization on 1000 draws") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> price(0.0, 900.0);
    std::uniform_real_distribution<double> pbs_d(50.0, 800.0);
    std::uniform_real_distribution<double> th(1.5, 3.5);
    std::uniform_real_distribution<double> cap_d(0.4, 1.2);
    const double grid = 1e-4;
    const double sigma = 0.4, y = 120.0;

    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double p_c = price(rng), pbs = pbs_d(rng), theta2 = th(rng), cap = cap_d(rng);
        double closed = optimal_mitigation(p_c, pbs, theta2, cap);

        double best_mu = 0.0, best_cost = INFINITY;
        int n = static_cast<int>(cap / grid);
        for (int k = 0; k <= n; ++k) {
            double mu = std::min(k * grid, cap);
            double cost = carbon_tax(p_c, mu, sigma, y) +
                          abatement_cost(mu, sigma, y, pbs * kUsdPerTco2ToTrillions, theta2);
            if (cost < best_cost) {
                best_cost = cost;
                best_mu = mu;
            }
        }
        worst = std::max(worst, std::fabs(closed - best_mu));
    }
    CHECK(worst <= grid);
}

TEST_CASE("capital accumulation with five-year depreciation") {
    // (1-0.1)^5 = 0.59049
    CHECK(step_capital(100.0, 20.0, 0.25, 0.1, 5) ==
          doctest::Approx(100.0 * 0.59049 + 5 * 0.25 * 20.0).epsilon(1e-13));
    CHECK(step_capital(1e-5, -50.0, 0.25, 0.1, 5) == 1e-6);  // floor
}

TEST_CASE("first-period transition reproduces the calibration row") {
    ModelConfig cfg = default_config();
    ExogenousPaths paths = exogenous_paths(cfg);
    ClimateParams cp = climate_params(cfg, paths);
    EconomyState econ{cfg.k0};
    ClimateState clim = initial_climate_state(cfg);

    TransitionResult r = period_transition(econ, clim, 0.25, 0.03, 0, cfg, paths, cp);
    CHECK(r.record.year == 2015);
    CHECK(r.record.y_gross == doctest::Approx(105.17742197545904).epsilon(1e-13));
    CHECK(r.record.t_at == 0.85);
    CHECK(r.record.damage_frac == doctest::Approx(0.00236 * 0.85 * 0.85).epsilon(1e-13));
    CHECK(r.record.e_ind ==
          doctest::Approx(0.97 * 0.35032002736111795 * 105.17742197545904).epsilon(1e-12));
    CHECK(r.record.e_total == doctest::Approx(r.record.e_ind + 2.6).epsilon(1e-12));
    CHECK(r.record.k_over_y == doctest::Approx(223.0 / 105.17742197545904).epsilon(1e-13));
    CHECK(r.record.mu == 0.03);
    CHECK(r.record.s == 0.25);
    // lambda is the abatement share of net output
    CHECK(r.record.y_final ==
          doctest::Approx(r.record.y_net * (1.0 - r.record.lambda)).epsilon(1e-13));
    // consumption per capita in thousand USD
    CHECK(r.record.c_percap ==
          doctest::Approx(1000.0 * (1 - 0.25) * r.record.y_final * 5 / (5 * 7403.0))
              .epsilon(1e-12));
    CHECK_FALSE(r.floor_hit);
    CHECK_FALSE(r.damage_clamped);

    // capital accumulates from final output
    CHECK(r.econ.k ==
          doctest::Approx(223.0 * 0.59049 + 5 * 0.25 * r.record.y_final).epsilon(1e-12));
    // carbon stock gains five years of emissions in GtC
    CHECK(r.climate.m_at + r.climate.m_up + r.climate.m_lo ==
          doctest::Approx(851.0 + 460.0 + 1740.0 + 5 * r.record.e_total / 3.664)
              .epsilon(1e-12));
}

TEST_CASE("damage channels diverge in the stock they destroy") {
    ModelConfig out_cfg = default_config();
    out_cfg.damage.a = 0.05;  // large enough to see channel differences
    ModelConfig cap_cfg = out_cfg;
    cap_cfg.damage.channel = DamageChannel::Capital;
    ModelConfig tfp_cfg = out_cfg;
    tfp_cfg.damage.channel = DamageChannel::Tfp;

    ExogenousPaths paths = exogenous_paths(out_cfg);
    ClimateParams cp = climate_params(out_cfg, paths);
    EconomyState econ{out_cfg.k0};
    ClimateState clim = initial_climate_state(out_cfg);
    clim.t_at = 3.0;

    TransitionResult r_out = period_transition(econ, clim, 0.25, 0.03, 0, out_cfg, paths, cp);
    TransitionResult r_cap = period_transition(econ, clim, 0.25, 0.03, 0, cap_cfg, paths, cp);
    TransitionResult r_tfp = period_transition(econ, clim, 0.25, 0.03, 0, tfp_cfg, paths, cp);

    double d = 0.05 * 9.0;
    CHECK(r_out.record.y_net == doctest::Approx(r_out.record.y_gross * (1 - d)).epsilon(1e-12));
    // capital damage costs (1-D)^gamma of output within the period
    CHECK(r_cap.record.y_net ==
          doctest::Approx(r_cap.record.y_gross * std::pow(1 - d, 0.3)).epsilon(1e-12));
    CHECK(r_tfp.record.y_net == doctest::Approx(r_out.record.y_net).epsilon(1e-12));

    // but the capital channel also destroys the stock that accumulates
    CHECK(r_cap.econ.k < r_out.econ.k);
    CHECK(r_out.record.e_ind == r_cap.record.e_ind);  // emissions from undamaged output
    CHECK(r_out.record.e_ind == r_tfp.record.e_ind);
}

TEST_CASE("damages evaluate at zero for a negative anomaly") {
    ModelConfig cfg = default_config();
    ExogenousPaths paths = exogenous_paths(cfg);
    ClimateParams cp = climate_params(cfg, paths);
    EconomyState econ{cfg.k0};
    ClimateState clim = initial_climate_state(cfg);
    clim.t_at = -0.5;
    TransitionResult r = period_transition(econ, clim, 0.25, 0.03, 0, cfg, paths, cp);
    CHECK(r.record.damage_frac == 0.0);
    CHECK(r.record.y_net == r.record.y_gross);
}
