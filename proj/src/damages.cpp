#include "dice/damages.hpp"

#include <cmath>
#include <stdexcept>

#include "dice/csvio.hpp"
#include "dice/embedded.hpp"

namespace dice {

namespace {

constexpr double kDamageCeiling = 1.0 - 1e-12;

[[noreturn]] void bad(const std::string& msg) {
    throw std::invalid_argument("damages: " + msg);
}

// Raw family expression before clamping.
double raw_damage(const DamageSpec& spec, double dt) {
    switch (spec.family) {
        case DamageFamily::QuadraticOutputLoss:
            return spec.a * dt * dt;
        case DamageFamily::RationalQuadratic:
            return 1.0 - 1.0 / (1.0 + spec.a * dt * dt);
        case DamageFamily::RationalLinearQuadratic:
            return 1.0 - 1.0 / (1.0 + spec.b * dt + spec.a * dt * dt);
        case DamageFamily::RationalCubedScaled:
            // Repaired 1992 form: the printed 1/(1 + a/9 + sqrt(dT)) violates
            // D(0) = 0; the cited manual's (dT/3)^2 scaling is used instead.
            return 1.0 - 1.0 / (1.0 + (spec.a / 9.0) * dt * dt);
        case DamageFamily::HighConvexity: {
            double q = (dt / spec.kappa1) * (dt / spec.kappa1) +
                       std::pow(dt / spec.kappa2, spec.p);
            return 1.0 - 1.0 / (1.0 + q);
        }
    }
    bad("unknown family");
}

void check_spec(const DamageSpec& spec) {
    switch (spec.family) {
        case DamageFamily::QuadraticOutputLoss:
        case DamageFamily::RationalQuadratic:
        case DamageFamily::RationalCubedScaled:
            if (spec.a < 0) bad("coefficient a must be >= 0");
            break;
        case DamageFamily::RationalLinearQuadratic:
            if (spec.a < 0 || spec.b < 0) bad("coefficients a, b must be >= 0");
            break;
        case DamageFamily::HighConvexity:
            if (spec.kappa1 <= 0 || spec.kappa2 <= 0)
                bad("high-convexity requires kappa1, kappa2 > 0");
            if (spec.p < 2) bad("high-convexity requires exponent p >= 2");
            break;
    }
}

} // namespace

DamageFamily parse_damage_family(const std::string& name) {
    if (name == "quadratic-output-loss") return DamageFamily::QuadraticOutputLoss;
    if (name == "rational-quadratic") return DamageFamily::RationalQuadratic;
    if (name == "rational-linear-quadratic") return DamageFamily::RationalLinearQuadratic;
    if (name == "rational-cubed-scaled") return DamageFamily::RationalCubedScaled;
    if (name == "high-convexity") return DamageFamily::HighConvexity;
    bad("unknown damage family: " + name);
}

std::string damage_family_name(DamageFamily f) {
    switch (f) {
        case DamageFamily::QuadraticOutputLoss: return "quadratic-output-loss";
        case DamageFamily::RationalQuadratic: return "rational-quadratic";
        case DamageFamily::RationalLinearQuadratic: return "rational-linear-quadratic";
        case DamageFamily::RationalCubedScaled: return "rational-cubed-scaled";
        case DamageFamily::HighConvexity: return "high-convexity";
    }
    return "?";
}

DamageChannel parse_damage_channel(const std::string& name) {
    if (name == "output") return DamageChannel::Output;
    if (name == "capital") return DamageChannel::Capital;
    if (name == "tfp") return DamageChannel::Tfp;
    bad("unknown damage channel: " + name);
}

std::string damage_channel_name(DamageChannel c) {
    switch (c) {
        case DamageChannel::Output: return "output";
        case DamageChannel::Capital: return "capital";
        case DamageChannel::Tfp: return "tfp";
    }
    return "?";
}

double damage_fraction(const DamageSpec& spec, double dt, bool* out_of_range) {
    if (!(dt >= 0.0)) bad("dT must be >= 0");
    check_spec(spec);
    double d = raw_damage(spec, dt);
    bool clamped = false;
    if (d < 0.0) d = 0.0;
    if (d >= 1.0) {
        d = kDamageCeiling;
        clamped = true;
    }
    if (out_of_range) *out_of_range = clamped;
    return d;
}

double damage_fraction_derivative(const DamageSpec& spec, double dt) {
    if (!(dt >= 0.0)) bad("dT must be >= 0");
    check_spec(spec);
    double d = raw_damage(spec, dt);
    if (d >= 1.0) return 0.0;
    switch (spec.family) {
        case DamageFamily::QuadraticOutputLoss:
            return 2.0 * spec.a * dt;
        case DamageFamily::RationalQuadratic: {
            double g = 1.0 + spec.a * dt * dt;
            return 2.0 * spec.a * dt / (g * g);
        }
        case DamageFamily::RationalLinearQuadratic: {
            double g = 1.0 + spec.b * dt + spec.a * dt * dt;
            return (spec.b + 2.0 * spec.a * dt) / (g * g);
        }
        case DamageFamily::RationalCubedScaled: {
            double a9 = spec.a / 9.0;
            double g = 1.0 + a9 * dt * dt;
            return 2.0 * a9 * dt / (g * g);
        }
        case DamageFamily::HighConvexity: {
            double g = 1.0 + (dt / spec.kappa1) * (dt / spec.kappa1) +
                       std::pow(dt / spec.kappa2, spec.p);
            double gp = 2.0 * dt / (spec.kappa1 * spec.kappa1) +
                        (dt > 0.0
                             ? spec.p * std::pow(dt / spec.kappa2, spec.p - 1.0) / spec.kappa2
                             : 0.0);
            return gp / (g * g);
        }
    }
    bad("unknown family");
}

const std::vector<EstimatePoint>& estimate_points() {
    static const std::vector<EstimatePoint> points = [] {
        std::string body = verified_embedded(embedded::damage_estimates_csv,
                                             embedded::damage_estimates_csv_fnv1a64,
                                             "damage_estimates.csv");
        auto rows = parse_csv(body);
        if (rows.empty() || rows[0].size() != 5)
            throw std::runtime_error("damage_estimates.csv: bad header");
        std::vector<EstimatePoint> out;
        for (size_t i = 1; i < rows.size(); ++i) {
            const auto& r = rows[i];
            if (r.size() != 5)
                throw std::runtime_error("damage_estimates.csv: bad row");
            EstimatePoint p;
            p.study = r[0];
            p.warming_c = std::stod(r[1]);
            p.impact_pct = std::stod(r[2]);
            p.method = r[3];
            p.coverage = r[4];
            if (!(p.warming_c > 0))
                throw std::runtime_error("damage_estimates.csv: warming must be > 0");
            if (p.method != "enumeration" && p.method != "statistical" &&
                p.method != "CGE" && p.method != "expert-elicitation")
                throw std::runtime_error("damage_estimates.csv: unknown method " + p.method);
            out.push_back(std::move(p));
        }
        return out;
    }();
    return points;
}

QuadraticPointFit fit_quadratic_to_points(const std::vector<EstimatePoint>& points) {
    if (points.empty()) bad("fit needs at least one point");
    // minimize sum (impact_frac + a*dT^2)^2 with impact_frac = impact_pct/100
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        double x = p.warming_c * p.warming_c;
        double y = -p.impact_pct / 100.0;
        sxx += x * x;
        sxy += x * y;
    }
    if (sxx <= 0.0) bad("fit is degenerate: all dT are zero");
    QuadraticPointFit fit;
    fit.a = sxy / sxx;
    double ss = 0.0;
    for (const auto& p : points) {
        double r = p.impact_pct / 100.0 + fit.a * p.warming_c * p.warming_c;
        ss += r * r;
    }
    fit.rmse = std::sqrt(ss / static_cast<double>(points.size()));
    return fit;
}

ChannelEffect damage_channel_apply(const DamageSpec& spec, double dt,
                                   double tfp, double capital, double y_gross,
                                   double gamma) {
    double d = damage_fraction(spec, dt);
    ChannelEffect e{tfp, capital, y_gross};
    switch (spec.channel) {
        case DamageChannel::Output:
            e.y_net = (1.0 - d) * y_gross;
            break;
        case DamageChannel::Capital:
            e.k_adj = (1.0 - d) * capital;
            e.y_net = y_gross * std::pow(1.0 - d, gamma);
            break;
        case DamageChannel::Tfp:
            e.a_adj = (1.0 - d) * tfp;
            e.y_net = (1.0 - d) * y_gross;
            break;
    }
    return e;
}

const std::vector<GenealogyEntry>& genealogy_specs() {
    static const std::vector<GenealogyEntry> entries = [] {
        std::vector<GenealogyEntry> v;
        auto quad = [](double a) {
            DamageSpec s;
            s.family = DamageFamily::QuadraticOutputLoss;
            s.a = a;
            return s;
        };
        auto rational = [](DamageFamily f, double a, double b = 0.0) {
            DamageSpec s;
            s.family = f;
            s.a = a;
            s.b = b;
            return s;
        };
        v.push_back({1992, "1992 (repaired)",
                     rational(DamageFamily::RationalCubedScaled, 0.0133)});
        v.push_back({1999, "1999",
                     rational(DamageFamily::RationalLinearQuadratic, 0.0035, 0.0045)});
        v.push_back({2008, "2008", rational(DamageFamily::RationalQuadratic, 0.0028388)});
        v.push_back({2013, "2013", rational(DamageFamily::RationalQuadratic, 0.00267)});
        v.push_back({2017, "2017", quad(0.00236)});
        v.push_back({2018, "2018", quad(0.00227)});
        return v;
    }();
    return entries;
}

} // namespace dice
