#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "dice/damages.hpp"

using namespace dice;

namespace {

DamageSpec quad(double a) {
    DamageSpec s;
    s.family = DamageFamily::QuadraticOutputLoss;
    s.a = a;
    return s;
}

DamageSpec spec(DamageFamily f, double a, double b = 0.0) {
    DamageSpec s;
    s.family = f;
    s.a = a;
    s.b = b;
    return s;
}

DamageSpec high_convexity(double k1, double k2, double p) {
    DamageSpec s;
    s.family = DamageFamily::HighConvexity;
    s.kappa1 = k1;
    s.kappa2 = k2;
    s.p = p;
    return s;
}

} // namespace

TEST_CASE("quadratic anchors at the published coefficients") {
    CHECK(damage_fraction(quad(0.00227), 0.0) == 0.0);
    // hand arithmetic: a*dT^2
    CHECK(damage_fraction(quad(0.00236), 4.08) == doctest::Approx(0.039285504).epsilon(1e-12));
    CHECK(damage_fraction(quad(0.19236), 2.27) == doctest::Approx(0.991211844).epsilon(1e-12));
    CHECK(damage_fraction(quad(0.18236), 2.32) == doctest::Approx(0.981534464).epsilon(1e-12));
    CHECK(damage_fraction(quad(0.00227), 3.0) == doctest::Approx(0.02043).epsilon(1e-12));
    CHECK(damage_fraction(quad(0.00227), 6.0) == doctest::Approx(0.08172).epsilon(1e-12));
}

TEST_CASE("rational families, hand-computed values at 3 degC") {
    CHECK(damage_fraction(spec(DamageFamily::RationalQuadratic, 0.0028388), 3.0) ==
          doctest::Approx(0.02491270043406979).epsilon(1e-12));
    CHECK(damage_fraction(spec(DamageFamily::RationalQuadratic, 0.00267), 3.0) ==
          doctest::Approx(0.02346610939132643).epsilon(1e-12));
    CHECK(damage_fraction(spec(DamageFamily::RationalLinearQuadratic, 0.0035, 0.0045), 3.0) ==
          doctest::Approx(0.04306220095693791).epsilon(1e-12));
    CHECK(damage_fraction(spec(DamageFamily::RationalCubedScaled, 0.0133), 3.0) ==
          doctest::Approx(0.013125431757623707).epsilon(1e-12));
}

TEST_CASE("high-convexity family, hand-computed values") {
    DamageSpec hc = high_convexity(20.46, 6.081, 6.754);
    CHECK(damage_fraction(hc, 0.0) == 0.0);
    CHECK(damage_fraction(hc, 2.0) == doctest::Approx(0.010001608763966607).epsilon(1e-12));
    CHECK(damage_fraction(hc, 4.0) == doctest::Approx(0.08866284085572029).epsilon(1e-12));
    // crosses one-half just above kappa2
    CHECK(damage_fraction(hc, 6.081) == doctest::Approx(0.5211499007721628).epsilon(1e-12));
}

TEST_CASE("family invariants: zero at zero, non-decreasing, below one") {
    std::vector<DamageSpec> specs = {
        quad(0.00227), quad(0.19236),
        spec(DamageFamily::RationalQuadratic, 0.0028388),
        spec(DamageFamily::RationalLinearQuadratic, 0.0035, 0.0045),
        spec(DamageFamily::RationalCubedScaled, 0.0133),
        high_convexity(20.46, 6.081, 6.754)};
    for (const auto& s : specs) {
        CHECK(damage_fraction(s, 0.0) == 0.0);
        double prev = 0.0;
        for (int i = 1; i <= 200; ++i) {
            double d = damage_fraction(s, 0.1 * i);
            CHECK(d >= prev);
            CHECK(d >= 0.0);
            CHECK(d < 1.0);
            prev = d;
        }
    }
}

TEST_CASE("negative anomaly is rejected; out-of-range values are flagged") {
    CHECK_THROWS_AS(damage_fraction(quad(0.00227), -0.1), std::invalid_argument);

    bool flagged = false;
    double d = damage_fraction(quad(0.19236), 2.4, &flagged);  // raw 1.108
    CHECK(flagged);
    CHECK(d == doctest::Approx(1.0 - 1e-12).epsilon(1e-15));

    flagged = true;
    damage_fraction(quad(0.00227), 3.0, &flagged);
    CHECK_FALSE(flagged);
}

TEST_CASE("derivative matches central differences on every family") {
    std::vector<DamageSpec> specs = {
        quad(0.00236),
        spec(DamageFamily::RationalQuadratic, 0.0028388),
        spec(DamageFamily::RationalLinearQuadratic, 0.0035, 0.0045),
        spec(DamageFamily::RationalCubedScaled, 0.0133),
        high_convexity(20.46, 6.081, 6.754)};
    const double h = 1e-6;
    for (const auto& s : specs)
        for (double dt : {0.5, 1.0, 2.5, 4.0, 7.5}) {
            double fd = (damage_fraction(s, dt + h) - damage_fraction(s, dt - h)) / (2 * h);
            double an = damage_fraction_derivative(s, dt);
            CHECK(an == doctest::Approx(fd).epsilon(1e-6));
        }
}

TEST_CASE("derivative is zero where the clamp is active") {
    CHECK(damage_fraction_derivative(quad(0.19236), 2.4) == 0.0);
    CHECK(damage_fraction_derivative(quad(0.19236), 10.0) == 0.0);
}

TEST_CASE("genealogy: six entries, oldest first, later revisions predict less damage") {
    const auto& g = genealogy_specs();
    REQUIRE(g.size() == 6);
    CHECK(g.front().year == 1992);
    CHECK(g.back().year == 2018);
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1].year < g[i].year);

    // pointwise ordering of the 1999-2018 revisions on [2, 6]
    for (int i = 0; i <= 40; ++i) {
        double dt = 2.0 + 4.0 * i / 40.0;
        double prev = damage_fraction(g[1].spec, dt);  // 1999
        for (size_t j = 2; j < g.size(); ++j) {
            double d = damage_fraction(g[j].spec, dt);
            CHECK(d <= prev + 1e-15);
            prev = d;
        }
    }
}

TEST_CASE("estimate dataset: 19 points with the documented extremes") {
    const auto& pts = estimate_points();
    REQUIRE(pts.size() == 19);
    const std::set<std::string> methods = {"enumeration", "statistical", "CGE",
                                           "expert-elicitation"};
    for (const auto& p : pts) {
        CHECK(p.warming_c > 0.0);
        CHECK(methods.count(p.method) == 1);
    }
    auto has = [&](double w, double i, const char* method = nullptr) {
        for (const auto& p : pts)
            if (std::fabs(p.warming_c - w) < 1e-9 && std::fabs(p.impact_pct - i) < 1e-9 &&
                (!method || p.method == method))
                return true;
        return false;
    };
    CHECK(has(1.0, 2.3));
    CHECK(has(5.4, -6.1));
    CHECK(has(3.2, -12.4));
    CHECK(has(3.0, -3.6, "expert-elicitation"));
}

TEST_CASE("least squares through the origin on the estimate points") {
    QuadraticPointFit fit = fit_quadratic_to_points(estimate_points());
    CHECK(fit.a == doctest::Approx(0.0027291524003117316).epsilon(1e-12));
    CHECK(fit.rmse == doctest::Approx(0.024658646941294677).epsilon(1e-12));

    // first-order condition: residuals orthogonal to the regressor
    double dot = 0.0;
    for (const auto& p : estimate_points()) {
        double x = p.warming_c * p.warming_c;
        double y = -p.impact_pct / 100.0;
        dot += (y - fit.a * x) * x;
    }
    CHECK(std::fabs(dot) < 1e-12);

    CHECK_THROWS_AS(fit_quadratic_to_points({}), std::invalid_argument);
}

TEST_CASE("damage channels: output scales Y, capital scales K, tfp scales A") {
    DamageSpec out = quad(0.1);
    DamageSpec cap = out;
    cap.channel = DamageChannel::Capital;
    DamageSpec tfp = out;
    tfp.channel = DamageChannel::Tfp;

    const double dt = 2.2360679774997896;  // D = 0.5 at a = 0.1
    const double A = 5.0, K = 200.0, Y = 100.0, gamma = 0.3;

    ChannelEffect e_out = damage_channel_apply(out, dt, A, K, Y, gamma);
    CHECK(e_out.y_net == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(e_out.k_adj == K);
    CHECK(e_out.a_adj == A);

    ChannelEffect e_cap = damage_channel_apply(cap, dt, A, K, Y, gamma);
    CHECK(e_cap.k_adj == doctest::Approx(100.0).epsilon(1e-9));
    // Y falls by (1-D)^gamma when only K is destroyed
    CHECK(e_cap.y_net == doctest::Approx(100.0 * 0.8122523963562356).epsilon(1e-9));
    CHECK(e_cap.a_adj == A);

    ChannelEffect e_tfp = damage_channel_apply(tfp, dt, A, K, Y, gamma);
    CHECK(e_tfp.a_adj == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(e_tfp.y_net == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(e_tfp.k_adj == K);
}

TEST_CASE("family and channel names round-trip through the parsers") {
    for (DamageFamily f : {DamageFamily::QuadraticOutputLoss, DamageFamily::RationalQuadratic,
                           DamageFamily::RationalLinearQuadratic,
                           DamageFamily::RationalCubedScaled, DamageFamily::HighConvexity})
        CHECK(parse_damage_family(damage_family_name(f)) == f);
    for (DamageChannel c :
         {DamageChannel::Output, DamageChannel::Capital, DamageChannel::Tfp})
        CHECK(parse_damage_channel(damage_channel_name(c)) == c);
    CHECK_THROWS_AS(parse_damage_family("cubic"), std::invalid_argument);
    CHECK_THROWS_AS(parse_damage_channel("labor"), std::invalid_argument);
}
