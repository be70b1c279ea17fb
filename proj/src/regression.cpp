#include "dice/regression.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "dice/csvio.hpp"
#include "dice/embedded.hpp"

namespace dice {

namespace {

double to_number(const std::string& field, const std::string& what) {
    const char* p = field.c_str();
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p || *end != '\0')
        throw std::runtime_error("state table: bad " + what + " value '" + field + "'");
    return v;
}

std::vector<StateRecord> parse_states() {
    std::string body = verified_embedded(embedded::state_table_csv,
                                         embedded::state_table_csv_fnv1a64,
                                         "state_temperature_gsp.csv");
    auto rows = parse_csv(body);
    if (rows.empty() || rows[0] != std::vector<std::string>{
                            "state", "temp_c", "gsp_bn", "pop_mn", "gsp_percap",
                            "dtemp", "dgsp_percap"})
        throw std::runtime_error("state table: unexpected header");
    std::vector<StateRecord> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 7)
            throw std::runtime_error("state table: row with wrong field count");
        StateRecord r;
        r.state = rows[i][0];
        r.temp_c = to_number(rows[i][1], "temp_c");
        r.gsp_bn = to_number(rows[i][2], "gsp_bn");
        r.pop_mn = to_number(rows[i][3], "pop_mn");
        r.gsp_percap = to_number(rows[i][4], "gsp_percap");
        r.dtemp = to_number(rows[i][5], "dtemp");
        r.dgsp_percap = to_number(rows[i][6], "dgsp_percap");
        out.push_back(std::move(r));
    }
    if (out.size() != 49)
        throw std::runtime_error("state table: expected 48 states plus USA");
    const StateRecord* usa = nullptr;
    for (const auto& r : out)
        if (r.state == "USA") {
            if (usa) throw std::runtime_error("state table: duplicate USA row");
            usa = &r;
        }
    if (!usa) throw std::runtime_error("state table: missing USA row");

    // Derived columns are the published (rounded) ones; verify them against
    // the raw columns within rounding slack. gsp_bn and pop_mn are themselves
    // rounded, so the per-capita reconstruction drifts by a few dollars for
    // small states (Vermont: $2.42).
    double mean = usa->gsp_bn * 1000.0 / usa->pop_mn;
    for (const auto& r : out) {
        double percap = r.gsp_bn * 1000.0 / r.pop_mn;
        if (std::fabs(r.gsp_percap - percap) > 3.0)
            throw std::runtime_error("state table: gsp_percap mismatch for " + r.state);
        if (std::fabs(r.dtemp - (r.temp_c - usa->temp_c)) > 1e-9)
            throw std::runtime_error("state table: dtemp mismatch for " + r.state);
        if (std::fabs(r.dgsp_percap - (percap - mean)) > 3.0)
            throw std::runtime_error("state table: dgsp_percap mismatch for " + r.state);
    }
    return out;
}

} // namespace

const std::vector<StateRecord>& load_states() {
    static const std::vector<StateRecord> records = parse_states();
    return records;
}

std::vector<StateRecord> state_rows_only() {
    std::vector<StateRecord> out;
    for (const auto& r : load_states())
        if (r.state != "USA") out.push_back(r);
    return out;
}

double national_mean_income() {
    for (const auto& r : load_states())
        if (r.state == "USA") return r.gsp_bn * 1000.0 / r.pop_mn;
    throw std::runtime_error("state table: missing USA row");
}

FitVariant parse_fit_variant(const std::string& name) {
    if (name == "unweighted-with-intercept") return FitVariant::UnweightedWithIntercept;
    if (name == "unweighted-through-origin") return FitVariant::UnweightedThroughOrigin;
    if (name == "weighted-with-intercept") return FitVariant::PopulationWeightedWithIntercept;
    if (name == "weighted-through-origin") return FitVariant::PopulationWeightedThroughOrigin;
    throw std::invalid_argument("unknown fit variant: " + name);
}

std::string fit_variant_name(FitVariant v) {
    switch (v) {
        case FitVariant::UnweightedWithIntercept: return "unweighted-with-intercept";
        case FitVariant::UnweightedThroughOrigin: return "unweighted-through-origin";
        case FitVariant::PopulationWeightedWithIntercept: return "weighted-with-intercept";
        case FitVariant::PopulationWeightedThroughOrigin: return "weighted-through-origin";
    }
    throw std::invalid_argument("unknown fit variant");
}

QuadraticFit fit_states(const std::vector<StateRecord>& records, FitVariant v) {
    if (records.size() < 3)
        throw std::invalid_argument("fit_states: need at least 3 records");
    bool weighted = v == FitVariant::PopulationWeightedWithIntercept ||
                    v == FitVariant::PopulationWeightedThroughOrigin;
    bool intercept = v == FitVariant::UnweightedWithIntercept ||
                     v == FitVariant::PopulationWeightedWithIntercept;
    double mean = national_mean_income();

    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (const auto& r : records) {
        double w = weighted ? r.pop_mn : 1.0;
        double x = r.dtemp * r.dtemp;
        double y = r.dgsp_percap / mean;
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
    }

    QuadraticFit fit;
    fit.variant = v;
    if (intercept) {
        double det = sw * swxx - swx * swx;
        if (std::fabs(det) < 1e-300)
            throw std::invalid_argument("fit_states: singular design");
        fit.beta = (sw * swxy - swx * swy) / det;
        fit.intercept = (swxx * swy - swx * swxy) / det;
    } else {
        if (swxx < 1e-300)
            throw std::invalid_argument("fit_states: singular design");
        fit.beta = swxy / swxx;
        fit.intercept = 0.0;
    }

    double ybar = swy / sw;
    double sst = 0, ssr = 0;
    fit.residuals.reserve(records.size());
    for (const auto& r : records) {
        double w = weighted ? r.pop_mn : 1.0;
        double x = r.dtemp * r.dtemp;
        double y = r.dgsp_percap / mean;
        double yhat = fit.intercept + fit.beta * x;
        fit.residuals.push_back((y - yhat) * mean);
        sst += w * (y - ybar) * (y - ybar);
        ssr += w * (y - yhat) * (y - yhat);
    }
    fit.r_squared = sst > 0 ? 1.0 - ssr / sst : 0.0;
    return fit;
}

DiceComparison compare_to_dice(const QuadraticFit& fit, double dice_a) {
    DiceComparison cmp;
    cmp.beta_abs = std::fabs(fit.beta);
    cmp.dice_a = dice_a;
    cmp.verdict = cmp.beta_abs > dice_a ? 1 : cmp.beta_abs < dice_a ? -1 : 0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "|beta| = %.6f per degC^2 vs quadratic coefficient a = %.6f: "
                  "cross-sectional slope is %s the model coefficient",
                  cmp.beta_abs, dice_a,
                  cmp.verdict > 0   ? "larger than"
                  : cmp.verdict < 0 ? "smaller than"
                                    : "equal to");
    cmp.text = buf;
    return cmp;
}

} // namespace dice
