#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dice/regression.hpp"

using namespace dice;

TEST_CASE("embedded state table: 48 states plus the national aggregate") {
    const auto& all = load_states();
    REQUIRE(all.size() == 49);
    int usa = 0;
    for (const auto& r : all)
        if (r.state == "USA") ++usa;
    CHECK(usa == 1);
    CHECK(state_rows_only().size() == 48);
    for (const auto& r : state_rows_only()) CHECK(r.state != "USA");
    // the 1971-2000 national mean the deviations are taken against
    CHECK(national_mean_income() == doctest::Approx(33206.466167118226).epsilon(1e-12));
}

TEST_CASE("pinned through-origin fit matches the frozen estimates") {
    QuadraticFit fit = fit_states(state_rows_only(), FitVariant::UnweightedThroughOrigin);
    CHECK(fit.beta == doctest::Approx(-0.0031795501).epsilon(1e-6));
    CHECK(fit.intercept == 0.0);
    CHECK(fit.r_squared == doctest::Approx(0.0914559).epsilon(1e-5));
    CHECK(fit.residuals.size() == 48);

    // the published-coefficient comparison the fit motivates
    CHECK(std::fabs(fit.beta) > 0.00227);
    DiceComparison cmp = compare_to_dice(fit, 0.00227);
    CHECK(cmp.verdict == 1);
    CHECK(cmp.text.find("larger than") != std::string::npos);
}

TEST_CASE("every variant satisfies its normal equations") {
    for (FitVariant v :
         {FitVariant::UnweightedWithIntercept, FitVariant::UnweightedThroughOrigin,
          FitVariant::PopulationWeightedWithIntercept,
          FitVariant::PopulationWeightedThroughOrigin}) {
        std::vector<StateRecord> rows = state_rows_only();
        QuadraticFit fit = fit_states(rows, v);
        bool weighted = v == FitVariant::PopulationWeightedWithIntercept ||
                        v == FitVariant::PopulationWeightedThroughOrigin;
        bool intercept = v == FitVariant::UnweightedWithIntercept ||
                         v == FitVariant::PopulationWeightedWithIntercept;
        double mean = national_mean_income();
        double dot_x = 0.0, dot_1 = 0.0, scale = 0.0;
        for (const auto& r : rows) {
            double w = weighted ? r.pop_mn : 1.0;
            double x = r.dtemp * r.dtemp;
            double res = r.dgsp_percap / mean - (fit.intercept + fit.beta * x);
            dot_x += w * res * x;
            dot_1 += w * res;
            scale += w * x * x;
        }
        CHECK(std::fabs(dot_x) < 1e-9 * scale);
        if (intercept) CHECK(std::fabs(dot_1) < 1e-9 * scale);
        else CHECK(fit.intercept == 0.0);
        CHECK(fit.beta < 0.0);  // warmer-than-average states are poorer
        CHECK(fit.r_squared > 0.0);
        CHECK(fit.r_squared < 1.0);
    }
}

TEST_CASE("residuals are reported in dollars") {
    std::vector<StateRecord> rows = state_rows_only();
    QuadraticFit fit = fit_states(rows, FitVariant::UnweightedThroughOrigin);
    double mean = national_mean_income();
    for (size_t i = 0; i < rows.size(); ++i) {
        double x = rows[i].dtemp * rows[i].dtemp;
        double expect = rows[i].dgsp_percap - fit.beta * x * mean;
        CHECK(fit.residuals[i] == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("degenerate inputs are rejected") {
    std::vector<StateRecord> rows = state_rows_only();
    std::vector<StateRecord> two(rows.begin(), rows.begin() + 2);
    CHECK_THROWS_AS(fit_states(two, FitVariant::UnweightedThroughOrigin),
                    std::invalid_argument);

    std::vector<StateRecord> flat(rows.begin(), rows.begin() + 5);
    for (auto& r : flat) r.dtemp = 0.0;
    CHECK_THROWS_AS(fit_states(flat, FitVariant::UnweightedThroughOrigin),
                    std::invalid_argument);
}

TEST_CASE("variant names round-trip through the parser") {
    for (FitVariant v :
         {FitVariant::UnweightedWithIntercept, FitVariant::UnweightedThroughOrigin,
          FitVariant::PopulationWeightedWithIntercept,
          FitVariant::PopulationWeightedThroughOrigin})
        CHECK(parse_fit_variant(fit_variant_name(v)) == v);
    CHECK_THROWS_AS(parse_fit_variant("ridge"), std::invalid_argument);
}
