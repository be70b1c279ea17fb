// Structural parameters, the key=value config schema, and exogenous paths.
// All types are immutable after construction and safe to share across runs.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dice/damages.hpp"

namespace dice {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeGrid {
    int start_year = 2015;
    int step_years = 5;
    int periods = 100;  // default horizon reaches 2510
};

struct ExogenousSpec {
    // population, millions; L(t+1) = L*(asym/L)^adj
    double pop0 = 7403.0;
    double pop_adj = 0.134;
    double pop_asym = 11500.0;
    // TFP; A(t+1) = A/(1 - g), g decaying at tfp_decline per year
    double tfp0 = 5.115;
    double tfp_g0 = 0.076;
    double tfp_decline = 0.005;
    // carbon intensity, tCO2 per 1000 USD of gross output
    double sigma0 = 0.35032002736111795;
    double sigma_g0 = -0.0152;
    double sigma_g_trend = -0.001;
    // land-use emissions, GtCO2/yr, continuous decay 1/yr
    double eland0 = 2.6;
    double eland_decay = 0.024433526794841506;
    // backstop price, USD/tCO2, continuous decay 1/yr
    double pbs0 = 550.0;
    double pbs_decay = 0.005063561596857979;
    // exogenous non-CO2 forcing ramp, W/m2
    double fex0 = 0.5;
    double fex1 = 1.0;
    int fex_ramp_periods = 17;
    // first-period mitigation is a model constraint, not a solver choice
    double mu_first_period = 0.03;
    double mu_cap_low = 1.0;
    double mu_cap_high = 1.2;
    int mu_cap_switch_year = 2160;
};

struct ClimateConfig {
    double mat0 = 851.0, mu0 = 460.0, ml0 = 1740.0;           // GtC
    double mateq = 588.0, mueq = 360.0, mleq = 1720.0;        // GtC
    double b12 = 0.12, b23 = 0.007;                           // per period
    double f2x = 3.6813;                                      // W/m2
    double ecs = 3.1;                                         // degC
    double c1 = 0.1005, c3 = 0.088, c4 = 0.025;
    double tatm0 = 0.85, tocean0 = 0.0068;                    // degC
    double gtco2_per_gtc = 3.664;
};

struct Floors {
    double capital = 1e-6;  // trillions USD2005
    double cpc = 0.01;      // thousand USD/yr per capita
};

struct PriceCap {
    double p0 = 2.0;                       // USD/tCO2 at start_year
    double growth = 0.019802627296179712;  // 1/yr continuous
};

enum class GradientMode { Adjoint, FiniteDifference };
enum class RunMode { Optimal, Baseline, FixedControls };

struct SolverSettings {
    double tol = 1e-6;      // projected-gradient sup norm, normalized objective
    int max_iters = 40000;
    GradientMode gradient = GradientMode::Adjoint;
    unsigned seed = 0;      // permutes the multi-start order
    int terminal_savings_periods = 10;
};

struct ModelConfig {
    double alpha = 1.45;
    double rho = 0.015;
    double gamma = 0.300;
    double delta = 0.100;
    double theta2 = 2.6;
    double k0 = 223.0;
    DamageSpec damage;
    TimeGrid grid;
    ExogenousSpec exo;
    ClimateConfig climate;
    Floors floors;
    PriceCap price_cap;
    SolverSettings solver;
    RunMode mode = RunMode::Optimal;
    double fixed_s = 0.25;
    double fixed_mu = 0.10;
    std::string regression_variant = "unweighted-through-origin";
};

// Embedded defaults (checksum-verified, then validated).
ModelConfig default_config();

// Defaults overlaid with the key=value file at path; unknown keys and
// invariant violations raise ConfigError naming the offending key.
ModelConfig load_config(const std::string& path);

// Overlay raw config text onto an existing config. origin names the source
// in error messages.
void apply_config_text(ModelConfig& cfg, const std::string& text, const std::string& origin);

void validate_config(const ModelConfig& cfg);

struct ExogenousPaths {
    std::vector<int> years;
    std::vector<double> L;       // millions
    std::vector<double> A;       // TFP level
    std::vector<double> sigma;   // tCO2 per 1000 USD
    std::vector<double> e_exo;   // GtCO2/yr
    std::vector<double> p_bs;    // USD/tCO2
    std::vector<double> mu_cap;
    std::vector<double> f_exo;   // W/m2
};

// Deterministic: identical configs yield bit-identical arrays.
ExogenousPaths exogenous_paths(const ModelConfig& cfg);

// Canonical resolved dump (sorted keys, %.17g) and its FNV-1a64 hash;
// used for provenance comments and the run manifest.
std::string config_dump(const ModelConfig& cfg);
uint64_t config_hash(const ModelConfig& cfg);
std::string config_hash_hex(const ModelConfig& cfg);

// Long-run savings rate used for the frozen terminal periods.
double terminal_savings_rate(const ModelConfig& cfg);

} // namespace dice
