#include "dice/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dice/embedded.hpp"

namespace dice {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    const char* p = value.c_str();
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p || *end != '\0')
        throw ConfigError("config: key " + key + " expects a number, got '" + value + "'");
    return v;
}

int parse_integer(const std::string& key, const std::string& value) {
    double v = parse_number(key, value);
    if (v != std::floor(v))
        throw ConfigError("config: key " + key + " expects an integer, got '" + value + "'");
    return static_cast<int>(v);
}

using Setter = std::function<void(ModelConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& key_table() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto num = [](double ModelConfig::* field) {
            return [field](ModelConfig& c, const std::string& k, const std::string& v) {
                c.*field = parse_number(k, v);
            };
        };
        t["model.alpha"] = num(&ModelConfig::alpha);
        t["model.rho"] = num(&ModelConfig::rho);
        t["model.gamma"] = num(&ModelConfig::gamma);
        t["model.delta"] = num(&ModelConfig::delta);
        t["model.theta2"] = num(&ModelConfig::theta2);
        t["model.k0"] = num(&ModelConfig::k0);

        t["grid.start_year"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.grid.start_year = parse_integer(k, v);
        };
        t["grid.step_years"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.grid.step_years = parse_integer(k, v);
        };
        t["grid.periods"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.grid.periods = parse_integer(k, v);
        };

        t["damage.family"] = [](ModelConfig& c, const std::string&, const std::string& v) {
            c.damage.family = parse_damage_family(v);
        };
        t["damage.a"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.damage.a = parse_number(k, v);
        };
        t["damage.b"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.damage.b = parse_number(k, v);
        };
        t["damage.kappa1"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.damage.kappa1 = parse_number(k, v);
        };
        t["damage.kappa2"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.damage.kappa2 = parse_number(k, v);
        };
        t["damage.p"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.damage.p = parse_number(k, v);
        };
        t["damage.channel"] = [](ModelConfig& c, const std::string&, const std::string& v) {
            c.damage.channel = parse_damage_channel(v);
        };

        auto exo = [](double ExogenousSpec::* field) {
            return [field](ModelConfig& c, const std::string& k, const std::string& v) {
                c.exo.*field = parse_number(k, v);
            };
        };
        t["exo.pop0"] = exo(&ExogenousSpec::pop0);
        t["exo.pop_adj"] = exo(&ExogenousSpec::pop_adj);
        t["exo.pop_asym"] = exo(&ExogenousSpec::pop_asym);
        t["exo.tfp0"] = exo(&ExogenousSpec::tfp0);
        t["exo.tfp_g0"] = exo(&ExogenousSpec::tfp_g0);
        t["exo.tfp_decline"] = exo(&ExogenousSpec::tfp_decline);
        t["exo.sigma0"] = exo(&ExogenousSpec::sigma0);
        t["exo.sigma_g0"] = exo(&ExogenousSpec::sigma_g0);
        t["exo.sigma_g_trend"] = exo(&ExogenousSpec::sigma_g_trend);
        t["exo.eland0"] = exo(&ExogenousSpec::eland0);
        t["exo.eland_decay"] = exo(&ExogenousSpec::eland_decay);
        t["exo.pbs0"] = exo(&ExogenousSpec::pbs0);
        t["exo.pbs_decay"] = exo(&ExogenousSpec::pbs_decay);
        t["exo.fex0"] = exo(&ExogenousSpec::fex0);
        t["exo.fex1"] = exo(&ExogenousSpec::fex1);
        t["exo.fex_ramp_periods"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.exo.fex_ramp_periods = parse_integer(k, v);
        };
        t["exo.mu_first_period"] = exo(&ExogenousSpec::mu_first_period);
        t["exo.mu_cap_low"] = exo(&ExogenousSpec::mu_cap_low);
        t["exo.mu_cap_high"] = exo(&ExogenousSpec::mu_cap_high);
        t["exo.mu_cap_switch_year"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.exo.mu_cap_switch_year = parse_integer(k, v);
        };

        auto cli = [](double ClimateConfig::* field) {
            return [field](ModelConfig& c, const std::string& k, const std::string& v) {
                c.climate.*field = parse_number(k, v);
            };
        };
        t["climate.mat0"] = cli(&ClimateConfig::mat0);
        t["climate.mu0"] = cli(&ClimateConfig::mu0);
        t["climate.ml0"] = cli(&ClimateConfig::ml0);
        t["climate.mateq"] = cli(&ClimateConfig::mateq);
        t["climate.mueq"] = cli(&ClimateConfig::mueq);
        t["climate.mleq"] = cli(&ClimateConfig::mleq);
        t["climate.b12"] = cli(&ClimateConfig::b12);
        t["climate.b23"] = cli(&ClimateConfig::b23);
        t["climate.f2x"] = cli(&ClimateConfig::f2x);
        t["climate.ecs"] = cli(&ClimateConfig::ecs);
        t["climate.c1"] = cli(&ClimateConfig::c1);
        t["climate.c3"] = cli(&ClimateConfig::c3);
        t["climate.c4"] = cli(&ClimateConfig::c4);
        t["climate.tatm0"] = cli(&ClimateConfig::tatm0);
        t["climate.tocean0"] = cli(&ClimateConfig::tocean0);
        t["climate.gtco2_per_gtc"] = cli(&ClimateConfig::gtco2_per_gtc);

        t["floors.capital"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.floors.capital = parse_number(k, v);
        };
        t["floors.cpc"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.floors.cpc = parse_number(k, v);
        };

        t["price_cap.p0"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.price_cap.p0 = parse_number(k, v);
        };
        t["price_cap.growth"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.price_cap.growth = parse_number(k, v);
        };

        t["solver.tol"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.solver.tol = parse_number(k, v);
        };
        t["solver.max_iters"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.solver.max_iters = parse_integer(k, v);
        };
        t["solver.gradient"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            if (v == "adjoint") c.solver.gradient = GradientMode::Adjoint;
            else if (v == "fd") c.solver.gradient = GradientMode::FiniteDifference;
            else throw ConfigError("config: key " + k + " expects adjoint|fd, got '" + v + "'");
        };
        t["solver.seed"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.solver.seed = static_cast<unsigned>(parse_integer(k, v));
        };
        t["solver.terminal_savings_periods"] = [](ModelConfig& c, const std::string& k,
                                                  const std::string& v) {
            c.solver.terminal_savings_periods = parse_integer(k, v);
        };

        t["run.mode"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            if (v == "optimal") c.mode = RunMode::Optimal;
            else if (v == "baseline") c.mode = RunMode::Baseline;
            else if (v == "fixed-controls") c.mode = RunMode::FixedControls;
            else throw ConfigError("config: key " + k +
                                   " expects optimal|baseline|fixed-controls, got '" + v + "'");
        };
        t["run.fixed_s"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.fixed_s = parse_number(k, v);
        };
        t["run.fixed_mu"] = [](ModelConfig& c, const std::string& k, const std::string& v) {
            c.fixed_mu = parse_number(k, v);
        };

        t["regression.variant"] = [](ModelConfig& c, const std::string&, const std::string& v) {
            c.regression_variant = v;
        };
        return t;
    }();
    return table;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("config: " + msg);
}

void require_finite_positive(double v, const std::string& key) {
    require(std::isfinite(v) && v > 0, key + " must be finite and > 0");
}

} // namespace

void apply_config_text(ModelConfig& cfg, const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + origin + ":" + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto it = key_table().find(key);
        if (it == key_table().end())
            throw ConfigError("config: " + origin + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        it->second(cfg, key, value);
    }
}

void validate_config(const ModelConfig& cfg) {
    require(std::isfinite(cfg.alpha) && cfg.alpha > 0, "model.alpha must be > 0");
    require(std::isfinite(cfg.rho) && cfg.rho > 0, "model.rho must be > 0");
    require(cfg.gamma > 0 && cfg.gamma < 1, "model.gamma must be in (0,1)");
    require(cfg.delta > 0 && cfg.delta < 1, "model.delta must be in (0,1)");
    require(cfg.theta2 > 1, "model.theta2 must be > 1 (convexity)");
    require_finite_positive(cfg.k0, "model.k0");

    require(cfg.grid.step_years >= 1, "grid.step_years must be >= 1");
    require(cfg.grid.periods >= 2, "grid.periods must be >= 2");

    require_finite_positive(cfg.exo.pop0, "exo.pop0");
    require_finite_positive(cfg.exo.pop_asym, "exo.pop_asym");
    require(cfg.exo.pop_adj > 0, "exo.pop_adj must be > 0");
    require_finite_positive(cfg.exo.tfp0, "exo.tfp0");
    require(cfg.exo.tfp_g0 >= 0 && cfg.exo.tfp_g0 < 1, "exo.tfp_g0 must be in [0,1)");
    require(cfg.exo.tfp_decline >= 0, "exo.tfp_decline must be >= 0");
    require_finite_positive(cfg.exo.sigma0, "exo.sigma0");
    require(std::isfinite(cfg.exo.sigma_g0), "exo.sigma_g0 must be finite");
    require(cfg.exo.sigma_g0 <= 0, "exo.sigma_g0 must be <= 0 (sigma non-increasing)");
    require_finite_positive(cfg.exo.eland0, "exo.eland0");
    require(cfg.exo.eland_decay >= 0, "exo.eland_decay must be >= 0");
    require_finite_positive(cfg.exo.pbs0, "exo.pbs0");
    require(cfg.exo.pbs_decay >= 0, "exo.pbs_decay must be >= 0");
    require(cfg.exo.fex_ramp_periods >= 1, "exo.fex_ramp_periods must be >= 1");
    require(cfg.exo.mu_first_period >= 0 && cfg.exo.mu_first_period <= 1,
            "exo.mu_first_period must be in [0,1]");
    require(cfg.exo.mu_cap_low > 0 && cfg.exo.mu_cap_low <= 1.2,
            "exo.mu_cap_low must be in (0,1.2]");
    require(cfg.exo.mu_cap_high >= cfg.exo.mu_cap_low && cfg.exo.mu_cap_high <= 1.2,
            "exo.mu_cap_high must be in [mu_cap_low,1.2]");

    require_finite_positive(cfg.climate.mat0, "climate.mat0");
    require_finite_positive(cfg.climate.mu0, "climate.mu0");
    require_finite_positive(cfg.climate.ml0, "climate.ml0");
    require_finite_positive(cfg.climate.mateq, "climate.mateq");
    require_finite_positive(cfg.climate.mueq, "climate.mueq");
    require_finite_positive(cfg.climate.mleq, "climate.mleq");
    require(cfg.climate.b12 > 0 && cfg.climate.b12 < 1, "climate.b12 must be in (0,1)");
    require(cfg.climate.b23 > 0 && cfg.climate.b23 < 1, "climate.b23 must be in (0,1)");
    require_finite_positive(cfg.climate.f2x, "climate.f2x");
    require_finite_positive(cfg.climate.ecs, "climate.ecs");
    require_finite_positive(cfg.climate.gtco2_per_gtc, "climate.gtco2_per_gtc");

    require(cfg.floors.capital > 0, "floors.capital must be > 0");
    require(cfg.floors.cpc > 0, "floors.cpc must be > 0");
    require(cfg.price_cap.p0 >= 0, "price_cap.p0 must be >= 0");

    require(cfg.solver.tol > 0, "solver.tol must be > 0");
    require(cfg.solver.max_iters >= 1, "solver.max_iters must be >= 1");
    require(cfg.solver.terminal_savings_periods >= 0 &&
                cfg.solver.terminal_savings_periods < cfg.grid.periods,
            "solver.terminal_savings_periods must be in [0, periods)");

    require(cfg.fixed_s >= 0 && cfg.fixed_s <= 1, "run.fixed_s must be in [0,1]");
    require(cfg.fixed_mu >= 0 && cfg.fixed_mu <= cfg.exo.mu_cap_high,
            "run.fixed_mu must be in [0, mu_cap_high]");

    // Damage spec sanity at a representative anomaly; rejects invalid
    // coefficient combinations up front.
    damage_fraction(cfg.damage, 1.0);
}

ModelConfig default_config() {
    ModelConfig cfg;
    std::string body = verified_embedded(embedded::defaults_cfg,
                                         embedded::defaults_cfg_fnv1a64, "defaults.cfg");
    apply_config_text(cfg, body, "defaults.cfg");
    validate_config(cfg);
    return cfg;
}

ModelConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    ModelConfig cfg = default_config();
    apply_config_text(cfg, ss.str(), path);
    validate_config(cfg);
    return cfg;
}

ExogenousPaths exogenous_paths(const ModelConfig& cfg) {
    validate_config(cfg);
    const int n = cfg.grid.periods;
    const double h = cfg.grid.step_years;
    ExogenousPaths p;
    p.years.resize(n);
    p.L.resize(n);
    p.A.resize(n);
    p.sigma.resize(n);
    p.e_exo.resize(n);
    p.p_bs.resize(n);
    p.mu_cap.resize(n);
    p.f_exo.resize(n);

    p.L[0] = cfg.exo.pop0;
    p.A[0] = cfg.exo.tfp0;
    p.sigma[0] = cfg.exo.sigma0;
    double gsig = cfg.exo.sigma_g0;
    for (int t = 0; t < n; ++t) {
        p.years[t] = cfg.grid.start_year + cfg.grid.step_years * t;
        double tau = h * t;
        if (t > 0) {
            p.L[t] = p.L[t - 1] * std::pow(cfg.exo.pop_asym / p.L[t - 1], cfg.exo.pop_adj);
            double ga = cfg.exo.tfp_g0 * std::exp(-cfg.exo.tfp_decline * h * (t - 1));
            p.A[t] = p.A[t - 1] / (1.0 - ga);
            p.sigma[t] = p.sigma[t - 1] * std::exp(gsig * h);
            gsig *= std::pow(1.0 + cfg.exo.sigma_g_trend, h);
        }
        p.e_exo[t] = cfg.exo.eland0 * std::exp(-cfg.exo.eland_decay * tau);
        p.p_bs[t] = cfg.exo.pbs0 * std::exp(-cfg.exo.pbs_decay * tau);
        double ramp = std::min(1.0, static_cast<double>(t) / cfg.exo.fex_ramp_periods);
        p.f_exo[t] = cfg.exo.fex0 + (cfg.exo.fex1 - cfg.exo.fex0) * ramp;
        p.mu_cap[t] = p.years[t] >= cfg.exo.mu_cap_switch_year ? cfg.exo.mu_cap_high
                                                               : cfg.exo.mu_cap_low;
    }
    return p;
}

std::string config_dump(const ModelConfig& cfg) {
    auto fmt = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::map<std::string, std::string> kv;
    kv["model.alpha"] = fmt(cfg.alpha);
    kv["model.rho"] = fmt(cfg.rho);
    kv["model.gamma"] = fmt(cfg.gamma);
    kv["model.delta"] = fmt(cfg.delta);
    kv["model.theta2"] = fmt(cfg.theta2);
    kv["model.k0"] = fmt(cfg.k0);
    kv["grid.start_year"] = std::to_string(cfg.grid.start_year);
    kv["grid.step_years"] = std::to_string(cfg.grid.step_years);
    kv["grid.periods"] = std::to_string(cfg.grid.periods);
    kv["damage.family"] = damage_family_name(cfg.damage.family);
    kv["damage.a"] = fmt(cfg.damage.a);
    kv["damage.b"] = fmt(cfg.damage.b);
    kv["damage.kappa1"] = fmt(cfg.damage.kappa1);
    kv["damage.kappa2"] = fmt(cfg.damage.kappa2);
    kv["damage.p"] = fmt(cfg.damage.p);
    kv["damage.channel"] = damage_channel_name(cfg.damage.channel);
    kv["exo.pop0"] = fmt(cfg.exo.pop0);
    kv["exo.pop_adj"] = fmt(cfg.exo.pop_adj);
    kv["exo.pop_asym"] = fmt(cfg.exo.pop_asym);
    kv["exo.tfp0"] = fmt(cfg.exo.tfp0);
    kv["exo.tfp_g0"] = fmt(cfg.exo.tfp_g0);
    kv["exo.tfp_decline"] = fmt(cfg.exo.tfp_decline);
    kv["exo.sigma0"] = fmt(cfg.exo.sigma0);
    kv["exo.sigma_g0"] = fmt(cfg.exo.sigma_g0);
    kv["exo.sigma_g_trend"] = fmt(cfg.exo.sigma_g_trend);
    kv["exo.eland0"] = fmt(cfg.exo.eland0);
    kv["exo.eland_decay"] = fmt(cfg.exo.eland_decay);
    kv["exo.pbs0"] = fmt(cfg.exo.pbs0);
    kv["exo.pbs_decay"] = fmt(cfg.exo.pbs_decay);
    kv["exo.fex0"] = fmt(cfg.exo.fex0);
    kv["exo.fex1"] = fmt(cfg.exo.fex1);
    kv["exo.fex_ramp_periods"] = std::to_string(cfg.exo.fex_ramp_periods);
    kv["exo.mu_first_period"] = fmt(cfg.exo.mu_first_period);
    kv["exo.mu_cap_low"] = fmt(cfg.exo.mu_cap_low);
    kv["exo.mu_cap_high"] = fmt(cfg.exo.mu_cap_high);
    kv["exo.mu_cap_switch_year"] = std::to_string(cfg.exo.mu_cap_switch_year);
    kv["climate.mat0"] = fmt(cfg.climate.mat0);
    kv["climate.mu0"] = fmt(cfg.climate.mu0);
    kv["climate.ml0"] = fmt(cfg.climate.ml0);
    kv["climate.mateq"] = fmt(cfg.climate.mateq);
    kv["climate.mueq"] = fmt(cfg.climate.mueq);
    kv["climate.mleq"] = fmt(cfg.climate.mleq);
    kv["climate.b12"] = fmt(cfg.climate.b12);
    kv["climate.b23"] = fmt(cfg.climate.b23);
    kv["climate.f2x"] = fmt(cfg.climate.f2x);
    kv["climate.ecs"] = fmt(cfg.climate.ecs);
    kv["climate.c1"] = fmt(cfg.climate.c1);
    kv["climate.c3"] = fmt(cfg.climate.c3);
    kv["climate.c4"] = fmt(cfg.climate.c4);
    kv["climate.tatm0"] = fmt(cfg.climate.tatm0);
    kv["climate.tocean0"] = fmt(cfg.climate.tocean0);
    kv["climate.gtco2_per_gtc"] = fmt(cfg.climate.gtco2_per_gtc);
    kv["floors.capital"] = fmt(cfg.floors.capital);
    kv["floors.cpc"] = fmt(cfg.floors.cpc);
    kv["price_cap.p0"] = fmt(cfg.price_cap.p0);
    kv["price_cap.growth"] = fmt(cfg.price_cap.growth);
    kv["solver.tol"] = fmt(cfg.solver.tol);
    kv["solver.max_iters"] = std::to_string(cfg.solver.max_iters);
    kv["solver.gradient"] =
        cfg.solver.gradient == GradientMode::Adjoint ? "adjoint" : "fd";
    kv["solver.seed"] = std::to_string(cfg.solver.seed);
    kv["solver.terminal_savings_periods"] =
        std::to_string(cfg.solver.terminal_savings_periods);
    kv["run.mode"] = cfg.mode == RunMode::Optimal    ? "optimal"
                     : cfg.mode == RunMode::Baseline ? "baseline"
                                                     : "fixed-controls";
    kv["run.fixed_s"] = fmt(cfg.fixed_s);
    kv["run.fixed_mu"] = fmt(cfg.fixed_mu);
    kv["regression.variant"] = cfg.regression_variant;

    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

uint64_t config_hash(const ModelConfig& cfg) { return fnv1a64(config_dump(cfg)); }

std::string config_hash_hex(const ModelConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

double terminal_savings_rate(const ModelConfig& cfg) {
    return cfg.gamma * cfg.delta / (cfg.rho + cfg.delta);
}

} // namespace dice
