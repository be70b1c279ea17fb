// Damage-function families, the estimate-point dataset, and fitting helpers.
// Every family satisfies D(0) = 0, D non-decreasing on [0, 20], D in [0, 1).
#pragma once

#include <string>
#include <vector>

namespace dice {

enum class DamageFamily {
    QuadraticOutputLoss,     // D = a*dT^2
    RationalQuadratic,       // D = 1 - 1/(1 + a*dT^2)
    RationalLinearQuadratic, // D = 1 - 1/(1 + b*dT + a*dT^2)
    RationalCubedScaled,     // D = 1 - 1/(1 + (a/9)*dT^2), repaired 1992 form
    HighConvexity,           // D = 1 - 1/(1 + (dT/k1)^2 + (dT/k2)^p)
};

enum class DamageChannel { Output, Capital, Tfp };

struct DamageSpec {
    DamageFamily family = DamageFamily::QuadraticOutputLoss;
    double a = 0.0;
    double b = 0.0;       // rational-linear-quadratic only
    double kappa1 = 0.0;  // high-convexity only
    double kappa2 = 0.0;
    double p = 0.0;
    DamageChannel channel = DamageChannel::Output;
};

DamageFamily parse_damage_family(const std::string& name);
std::string damage_family_name(DamageFamily f);
DamageChannel parse_damage_channel(const std::string& name);
std::string damage_channel_name(DamageChannel c);

// D(dT), clamped to [0, 1 - 1e-12]. Raw values at or above 1 are outside the
// family's validated range; *out_of_range is set when the clamp fires.
// Throws std::invalid_argument for dT < 0 or an invalid spec.
double damage_fraction(const DamageSpec& spec, double dt, bool* out_of_range = nullptr);

// dD/d(dT) of the clamped fraction; zero where the clamp is active.
double damage_fraction_derivative(const DamageSpec& spec, double dt);

struct EstimatePoint {
    std::string study;
    double warming_c;    // degC
    double impact_pct;   // % of GDP, signed
    std::string method;  // enumeration | statistical | CGE | expert-elicitation
    std::string coverage;
};

// The 19-row embedded table (checksum-verified on first use).
const std::vector<EstimatePoint>& estimate_points();

struct QuadraticPointFit {
    double a;     // fitted coefficient of D = a*dT^2, impacts taken as fractions
    double rmse;  // per-point residual RMS, fraction-of-GDP units
};

// Least squares of -impact/100 on dT^2 through the origin.
// Throws std::invalid_argument when fewer than 1 point or all dT are 0.
QuadraticPointFit fit_quadratic_to_points(const std::vector<EstimatePoint>& points);

struct ChannelEffect {
    double a_adj;  // TFP after damage
    double k_adj;  // capital after damage
    double y_net;  // output net of damages
};

// Static application of the damage channel: output scales Y directly, capital
// scales K (output falls by (1-D)^gamma), tfp scales A.
ChannelEffect damage_channel_apply(const DamageSpec& spec, double dt,
                                   double tfp, double capital, double y_gross,
                                   double gamma);

struct GenealogyEntry {
    int year;
    std::string label;
    DamageSpec spec;
};

// The six published quadratic-era specifications, oldest first:
// 1992 (repaired), 1999, 2008, 2013, 2017, 2018.
const std::vector<GenealogyEntry>& genealogy_specs();

} // namespace dice
