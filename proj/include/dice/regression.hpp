// State temperature vs income regression on the embedded state table.
#pragma once

#include <string>
#include <vector>

namespace dice {

struct StateRecord {
    std::string state;
    double temp_c;       // 1971-2000 mean, degC
    double gsp_bn;       // billions USD
    double pop_mn;       // millions
    double gsp_percap;   // USD
    double dtemp;        // deviation from the national mean, degC
    double dgsp_percap;  // deviation from the national mean, USD
};

// Embedded table: 48 state rows plus the USA aggregate row, verbatim from the
// published table (Alaska, Hawaii, and DC are absent from the source).
// Checksum and internal-consistency invariants verified on first use.
const std::vector<StateRecord>& load_states();

// State rows only (drops the USA aggregate); the set the fits run on.
std::vector<StateRecord> state_rows_only();

// Exact national mean income, gsp_bn/pop_mn of the USA row.
double national_mean_income();

enum class FitVariant {
    UnweightedWithIntercept,
    UnweightedThroughOrigin,
    PopulationWeightedWithIntercept,
    PopulationWeightedThroughOrigin,
};

FitVariant parse_fit_variant(const std::string& name);
std::string fit_variant_name(FitVariant v);

struct QuadraticFit {
    FitVariant variant;
    double beta;        // fraction of mean income per degC^2
    double intercept;   // 0 for through-origin variants
    double r_squared;   // centered R^2
    std::vector<double> residuals;  // per record, USD
};

// Least squares of dgsp_percap/national-mean on dtemp^2.
// Throws std::invalid_argument on fewer than 3 records or singular design.
QuadraticFit fit_states(const std::vector<StateRecord>& records, FitVariant v);

struct DiceComparison {
    double beta_abs;
    double dice_a;
    int verdict;  // +1 |beta| > a (claim holds), 0 tie, -1 claim fails
    std::string text;
};

DiceComparison compare_to_dice(const QuadraticFit& fit, double dice_a);

} // namespace dice
