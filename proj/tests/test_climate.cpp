#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dice/climate.hpp"
#include "dice/config.hpp"

using namespace dice;

namespace {

ClimateParams default_climate() {
    ModelConfig cfg = default_config();
    return climate_params(cfg, exogenous_paths(cfg));
}

} // namespace

TEST_CASE("transfer matrix columns conserve mass and match the calibration") {
    ClimateParams cp = default_climate();
    // b21 = b12*mateq/mueq, b32 = b23*mueq/mleq
    CHECK(cp.transfer[0][1] == doctest::Approx(0.196).epsilon(1e-12));
    CHECK(cp.transfer[1][2] == doctest::Approx(0.0014651162790697675).epsilon(1e-12));
    CHECK(cp.transfer[0][2] == 0.0);
    CHECK(cp.transfer[2][0] == 0.0);
    for (int j = 0; j < 3; ++j) {
        double col = cp.transfer[0][j] + cp.transfer[1][j] + cp.transfer[2][j];
        CHECK(col == doctest::Approx(1.0).epsilon(1e-14));
        for (int i = 0; i < 3; ++i) CHECK(cp.transfer[i][j] >= 0.0);
    }
    CHECK(cp.m_pre == 588.0);
}

TEST_CASE("carbon mass is conserved to 1e-9 over a century of random emissions") {
    ClimateParams cp = default_climate();
    ClimateState st = initial_climate_state(default_config());
    std::mt19937 rng(20160818);
    std::uniform_real_distribution<double> em(0.0, 120.0);  // GtCO2 per period

    double total0 = st.m_at + st.m_up + st.m_lo;
    double injected = 0.0;
    for (int t = 0; t < 100; ++t) {
        double e = em(rng);
        st = step_carbon(st, e, cp);
        injected += e / 3.664;
        double total = st.m_at + st.m_up + st.m_lo;
        CHECK(std::fabs(total - (total0 + injected)) <= 1e-9 * (total0 + injected));
    }
}

TEST_CASE("reservoirs relax toward the preindustrial split with zero emissions") {
    ClimateParams cp = default_climate();
    ClimateState st = initial_climate_state(default_config());
    for (int t = 0; t < 20000; ++t) st = step_carbon(st, 0.0, cp);
    double total = st.m_at + st.m_up + st.m_lo;
    // equilibrium shares follow the calibrated reservoir masses
    CHECK(st.m_at / total == doctest::Approx(588.0 / (588.0 + 360.0 + 1720.0)).epsilon(1e-6));
    CHECK(st.m_up / total == doctest::Approx(360.0 / (588.0 + 360.0 + 1720.0)).epsilon(1e-6));
}

TEST_CASE("forcing is logarithmic in atmospheric carbon") {
    ClimateParams cp = default_climate();
    CHECK(forcing(588.0, cp, 0) == doctest::Approx(0.5).epsilon(1e-12));    // f_exo only
    CHECK(forcing(1176.0, cp, 0) == doctest::Approx(3.6813 + 0.5).epsilon(1e-12));
    CHECK(forcing(2352.0, cp, 0) == doctest::Approx(2 * 3.6813 + 0.5).epsilon(1e-12));
    // beyond the path end the ramp holds at its final value
    CHECK(forcing(588.0, cp, 10000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(forcing(0.0, cp, 0), std::invalid_argument);
    CHECK_THROWS_AS(forcing(-10.0, cp, 0), std::invalid_argument);
}

TEST_CASE("two-layer temperature equilibrates at the climate sensitivity") {
    ClimateParams cp = default_climate();
    ClimateState st = initial_climate_state(default_config());
    // hold forcing at one doubling
    for (int t = 0; t < 5000; ++t) st = step_temperature(st, cp.f2x, cp);
    CHECK(st.t_at == doctest::Approx(3.1).epsilon(1e-3 / 3.1));
    CHECK(st.t_lo == doctest::Approx(3.1).epsilon(1e-3 / 3.1));
}

TEST_CASE("ocean lags the atmosphere while warming") {
    ClimateParams cp = default_climate();
    ClimateState st = initial_climate_state(default_config());
    for (int t = 0; t < 40; ++t) {
        st = step_temperature(st, cp.f2x, cp);
        CHECK(st.t_lo < st.t_at);
    }
}

TEST_CASE("temperature update uses start-of-period values on the right side") {
    ClimateParams cp = default_climate();
    ClimateState st = initial_climate_state(default_config());
    double f = 2.0;
    ClimateState next = step_temperature(st, f, cp);
    double expect_at =
        st.t_at + cp.c1 * (f - cp.f2x / cp.ecs * st.t_at - cp.c3 * (st.t_at - st.t_lo));
    double expect_lo = st.t_lo + cp.c4 * (st.t_at - st.t_lo);
    CHECK(next.t_at == doctest::Approx(expect_at).epsilon(1e-15));
    CHECK(next.t_lo == doctest::Approx(expect_lo).epsilon(1e-15));
}

TEST_CASE("initial state matches the 2015 calibration") {
    ClimateState st = initial_climate_state(default_config());
    CHECK(st.m_at == 851.0);
    CHECK(st.m_up == 460.0);
    CHECK(st.m_lo == 1740.0);
    CHECK(st.t_at == 0.85);
    CHECK(st.t_lo == 0.0068);
}
