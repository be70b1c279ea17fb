#include "dice/runner.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dice/csvio.hpp"
#include "dice/ramsey.hpp"
#include "dice/regression.hpp"
#include "dice/svg.hpp"

namespace fs = std::filesystem;

namespace dice {

namespace {

std::string vformat(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, ap);
    va_end(ap);
    return buf;
}

std::string damage_spec_line(const DamageSpec& d) {
    std::string s = "damage: family=" + damage_family_name(d.family) +
                    " channel=" + damage_channel_name(d.channel);
    switch (d.family) {
        case DamageFamily::QuadraticOutputLoss:
        case DamageFamily::RationalQuadratic:
        case DamageFamily::RationalCubedScaled:
            s += " a=" + format_double(d.a);
            break;
        case DamageFamily::RationalLinearQuadratic:
            s += " a=" + format_double(d.a) + " b=" + format_double(d.b);
            break;
        case DamageFamily::HighConvexity:
            s += " kappa1=" + format_double(d.kappa1) +
                 " kappa2=" + format_double(d.kappa2) + " p=" + format_double(d.p);
            break;
    }
    return s;
}

std::string scenario_name(RunMode m) {
    switch (m) {
        case RunMode::Optimal: return "optimal";
        case RunMode::Baseline: return "baseline";
        case RunMode::FixedControls: return "fixed-controls";
    }
    return "?";
}

std::string gradient_name(GradientMode g) {
    return g == GradientMode::Adjoint ? "adjoint" : "fd";
}

// Output collector: files written immediately, names retained so the
// manifest (written last) can list exactly what exists.
struct Emitter {
    fs::path dir;
    std::vector<std::string> files;

    explicit Emitter(const fs::path& d) : dir(d) { fs::create_directories(d); }

    void emit(const std::string& rel, const std::string& content) {
        fs::path p = dir / rel;
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + p.string());
        files.push_back(rel);
    }

    void manifest(const std::string& command,
                  const std::vector<std::string>& config_paths,
                  const ModelConfig& cfg) {
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));

        nlohmann::ordered_json j;
        j["command"] = command;
        j["config_paths"] = config_paths;
        j["out_dir"] = dir.string();
        j["solver"] = {{"tol", cfg.solver.tol},
                       {"max_iters", cfg.solver.max_iters},
                       {"gradient", gradient_name(cfg.solver.gradient)},
                       {"seed", cfg.solver.seed},
                       {"terminal_savings_periods", cfg.solver.terminal_savings_periods},
                       {"scenario", scenario_name(cfg.mode)}};
        j["tool_version"] = kToolVersion;
        j["config_hash"] = config_hash_hex(cfg);
        j["wall_clock_utc"] = stamp;
        std::vector<std::string> sorted = files;
        std::sort(sorted.begin(), sorted.end());
        j["files"] = sorted;

        std::ofstream out(dir / "manifest.json", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write manifest.json");
        out << j.dump(2) << "\n";
    }
};

} // namespace

std::string report_text(const SolveReport& report, const ModelConfig& cfg) {
    std::string s;
    s += "status: " + solve_status_name(report.status) + "\n";
    s += "objective: " + format_double(report.objective) + "\n";
    s += "objective_normalized: " + format_double(report.objective_normalized) + "\n";
    s += "iterations: " + format_int(report.iterations) + "\n";
    s += "kkt_residual: " + format_double(report.kkt_residual) + "\n";
    s += "message: " + report.message + "\n";
    s += "scenario: " + scenario_name(cfg.mode) + "\n";
    s += damage_spec_line(cfg.damage) + "\n";
    s += vformat("grid: start_year=%d step_years=%d periods=%d\n",
                 cfg.grid.start_year, cfg.grid.step_years, cfg.grid.periods);
    s += "config_hash: " + config_hash_hex(cfg) + "\n";
    s += "backstop_price_initial_usd_per_tco2: " + format_double(cfg.exo.pbs0) + "\n";

    const auto& rec = report.trajectory.records;
    if (!rec.empty()) {
        double max_pc = 0.0;
        for (const auto& r : rec) max_pc = std::max(max_pc, r.p_c);
        s += "carbon_price_max_usd_per_tco2: " + format_double(max_pc) + "\n";
        SweepSummaryRow row = summarize_run(report, cfg.damage.a);
        s += "peak_damage_frac: " + format_double(row.peak_damage_frac) +
             " year=" + format_int(row.peak_damage_year) +
             " t_at=" + format_double(row.peak_damage_tat) + "\n";
        s += "min_k_over_y: " + format_double(row.min_k_over_y) + "\n";
        s += "min_c_percap_kusd: " + format_double(row.min_c_percap) + "\n";
        s += "recovery_year: " + format_int(row.recovery_year) + "\n";
        if (report.trajectory.penalized) s += "flag: consumption floor reached\n";
        if (report.trajectory.floor_hit) s += "flag: capital floor reached\n";
        if (report.trajectory.damage_clamped)
            s += "flag: damage fraction clamped at validated range\n";
    }
    if (report.status == SolveStatus::Converged && cfg.grid.periods >= 4) {
        for (int t = 0; t < 3; ++t) {
            int year = cfg.grid.start_year + t * cfg.grid.step_years;
            double scc = social_cost_of_carbon(report, cfg, t);
            s += vformat("scc_usd_per_tco2 %d: ", year) + format_double(scc) + "\n";
        }
    }
    return s;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::string s =
        "year,y_gross,y_net,y_final,damage_frac,lambda,e_ind,e_total,mu,s,"
        "c_percap,p_c,k_over_y,t_at\n";
    for (const auto& r : trajectory.records) {
        s += join_csv_row({format_int(r.year), format_double(r.y_gross),
                           format_double(r.y_net), format_double(r.y_final),
                           format_double(r.damage_frac), format_double(r.lambda),
                           format_double(r.e_ind), format_double(r.e_total),
                           format_double(r.mu), format_double(r.s),
                           format_double(r.c_percap), format_double(r.p_c),
                           format_double(r.k_over_y), format_double(r.t_at)});
        s += "\n";
    }
    return s;
}

std::string sweep_summary_csv(const std::vector<SolveReport>& runs,
                              const std::vector<double>& a_values) {
    std::string s =
        "a,status,peak_damage_frac,peak_damage_tat,peak_damage_year,"
        "min_k_over_y,min_c_percap,recovery_year\n";
    for (size_t i = 0; i < runs.size() && i < a_values.size(); ++i) {
        SweepSummaryRow row = summarize_run(runs[i], a_values[i]);
        s += join_csv_row({format_double(row.a), solve_status_name(row.status),
                           format_double(row.peak_damage_frac),
                           format_double(row.peak_damage_tat),
                           format_int(row.peak_damage_year),
                           format_double(row.min_k_over_y),
                           format_double(row.min_c_percap),
                           format_int(row.recovery_year)});
    }
    return s;
}

namespace {

int cmd_solve(const std::string& config_path, const ModelConfig& cfg,
              const fs::path& out_dir) {
    SolveReport rep = solve(cfg);
    Emitter em(out_dir);
    em.emit("trajectory.csv", trajectory_csv(rep.trajectory));
    em.emit("report.txt", report_text(rep, cfg));
    em.manifest("solve", {config_path}, cfg);
    std::cout << "solve: " << solve_status_name(rep.status) << ", objective "
              << format_double(rep.objective) << ", outputs in " << out_dir.string()
              << "\n";
    if (rep.status != SolveStatus::Converged) {
        std::cerr << "solve did not converge: " << rep.message << "\n";
        return 2;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const ModelConfig& cfg,
              const std::vector<double>& a_values, const fs::path& out_dir) {
    std::vector<SolveReport> runs = sensitivity_sweep(cfg, a_values);
    Emitter em(out_dir);
    em.emit("summary.csv", sweep_summary_csv(runs, a_values));
    for (size_t i = 0; i < runs.size(); ++i) {
        ModelConfig run_cfg = cfg;
        run_cfg.damage.a = a_values[i];
        std::string sub = "a_" + format_double(a_values[i]);
        em.emit(sub + "/trajectory.csv", trajectory_csv(runs[i].trajectory));
        em.emit(sub + "/report.txt", report_text(runs[i], run_cfg));
    }
    std::string hash = config_hash_hex(cfg);
    em.emit("fig4.svg", fig_sweep_svg(4, runs, a_values, hash));
    em.emit("fig5.svg", fig_sweep_svg(5, runs, a_values, hash));
    em.emit("fig6.svg", fig_sweep_svg(6, runs, a_values, hash));
    em.manifest("sweep", {config_path}, cfg);

    int converged = 0;
    for (size_t i = 0; i < runs.size(); ++i) {
        std::cout << "sweep a=" << format_double(a_values[i]) << ": "
                  << solve_status_name(runs[i].status) << "\n";
        if (runs[i].status == SolveStatus::Converged) ++converged;
        else std::cerr << "a=" << format_double(a_values[i]) << " did not converge: "
                       << runs[i].message << "\n";
    }
    std::cout << "sweep: " << converged << " of " << runs.size()
              << " runs converged, outputs in " << out_dir.string() << "\n";
    return converged > 0 ? 0 : 2;
}

int cmd_figures(const std::string& which, const ModelConfig& cfg,
                const fs::path& out_dir) {
    bool all = which == "all";
    if (!all && which != "fig1" && which != "fig2" && which != "fig3") {
        std::cerr << "unknown figure id '" << which
                  << "' (expected fig1, fig2, fig3, or all)\n";
        return 1;
    }
    std::string hash = config_hash_hex(cfg);
    Emitter em(out_dir);
    if (all || which == "fig1") em.emit("fig1.svg", fig_estimates_svg(hash));
    if (all || which == "fig2") em.emit("fig2.svg", fig_genealogy_svg(hash));
    if (all || which == "fig3") {
        QuadraticFit fit =
            fit_states(state_rows_only(), parse_fit_variant(cfg.regression_variant));
        em.emit("fig3.svg", fig_states_svg(fit, hash));
    }
    em.manifest("figures", {}, cfg);
    std::cout << "figures: " << em.files.size() << " file(s) in "
              << out_dir.string() << "\n";
    return 0;
}

std::string complex_str(std::complex<double> z) {
    if (z.imag() == 0.0) return format_double(z.real());
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") +
           format_double(std::fabs(z.imag())) + "i";
}

int cmd_ramsey(const std::string& config_path, const ModelConfig& cfg,
               const fs::path& out_dir) {
    RamseyParams params;
    params.alpha = cfg.alpha;
    params.rho = cfg.rho;
    params.delta = cfg.delta;
    params.gamma = cfg.gamma;
    params.tfp = cfg.exo.tfp0;
    SteadyState ss = steady_state(params);

    std::string s;
    s += "parameters: alpha=" + format_double(params.alpha) +
         " rho=" + format_double(params.rho) + " delta=" + format_double(params.delta) +
         " gamma=" + format_double(params.gamma) + " tfp=" + format_double(params.tfp) +
         "\n";
    s += "k_star: " + format_double(ss.k_star) + "\n";
    s += "c_star: " + format_double(ss.c_star) + "\n";
    s += "eigenvalues: " + complex_str(ss.eig1) + ", " + complex_str(ss.eig2) + "\n";
    s += "saddle: exactly one eigenvalue is negative; one initial consumption"
         " converges, all others diverge\n";
    for (double rel : {0.3, 0.5, 2.0}) {
        SaddlePath sp = saddle_path(rel * ss.k_star, params);
        TransversalityDiagnostic tv = transversality_diagnostic(sp.path, params);
        s += "c0 at k0=" + format_double(rel) + "*k_star: " + format_double(sp.c0) +
             " transversality_tail_log_slope=" + format_double(tv.tail_log_slope) +
             " vanishing=" + (tv.vanishing ? "yes" : "no") + "\n";
    }
    {
        SaddlePath sp = saddle_path(0.5 * ss.k_star, params);
        RamseyPath off = integrate_ramsey(0.5 * ss.k_star, sp.c0 * 0.95, params, 120.0);
        TransversalityDiagnostic tv = transversality_diagnostic(off, params);
        s += "perturbed c0 (0.95x saddle): transversality_tail_log_slope=" +
             format_double(tv.tail_log_slope) +
             " vanishing=" + (tv.vanishing ? "yes" : "no") + "\n";
    }

    Emitter em(out_dir);
    em.emit("ramsey.txt", s);
    em.emit("phase_portrait.svg", phase_portrait_svg(params, config_hash_hex(cfg)));
    em.manifest("ramsey",
                config_path.empty() ? std::vector<std::string>{}
                                    : std::vector<std::string>{config_path},
                cfg);
    std::cout << "ramsey: outputs in " << out_dir.string() << "\n";
    return 0;
}

int cmd_regress(const std::string& config_path, const ModelConfig& cfg,
                const fs::path& out_dir) {
    std::vector<StateRecord> rows = state_rows_only();
    std::string s;
    s += "records: " + format_int(static_cast<long long>(rows.size())) +
         " states (USA aggregate row excluded from fits)\n";
    s += "national_mean_income_usd: " + format_double(national_mean_income()) + "\n";
    const FitVariant variants[] = {FitVariant::UnweightedWithIntercept,
                                   FitVariant::UnweightedThroughOrigin,
                                   FitVariant::PopulationWeightedWithIntercept,
                                   FitVariant::PopulationWeightedThroughOrigin};
    for (FitVariant v : variants) {
        QuadraticFit fit = fit_states(rows, v);
        s += "variant " + fit_variant_name(v) + ": beta=" + format_double(fit.beta) +
             " intercept=" + format_double(fit.intercept) +
             " r_squared=" + format_double(fit.r_squared) + "\n";
    }
    QuadraticFit pinned = fit_states(rows, parse_fit_variant(cfg.regression_variant));
    s += "pinned_variant: " + cfg.regression_variant + "\n";
    DiceComparison cmp = compare_to_dice(pinned, 0.00227);
    s += cmp.text + "\n";

    Emitter em(out_dir);
    em.emit("regress.txt", s);
    em.emit("fig3.svg", fig_states_svg(pinned, config_hash_hex(cfg)));
    em.manifest("regress",
                config_path.empty() ? std::vector<std::string>{}
                                    : std::vector<std::string>{config_path},
                cfg);
    std::cout << "regress: outputs in " << out_dir.string() << "\n";
    return 0;
}

std::vector<double> parse_a_values(const std::string& raw) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= raw.size()) {
        size_t comma = raw.find(',', pos);
        std::string tok = raw.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b != std::string::npos) {
            tok = tok.substr(b, e - b + 1);
            char* end = nullptr;
            double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
                throw ConfigError("invalid --a-values entry '" + tok + "'");
            out.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{
        "dice: climate-economy integrated assessment engine.\n"
        "Exit codes: 0 success/converged, 1 usage or internal error, "
        "2 solver did not converge (infeasible or stalled)."};
    app.require_subcommand(0, 1);

    const char* env_out = std::getenv(kOutDirEnvVar);
    std::string default_out = env_out && *env_out ? env_out : "out";

    std::string config_path, scenario, a_values_raw, which = "all";
    std::string out_dir = default_out;
    unsigned seed = 0;
    int periods = 0, step_years = 0;
    double solver_tol = 0.0;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* c = cmd->add_option("config", config_path, "key=value config file");
        if (config_required) c->required();
        cmd->add_option("--out", out_dir,
                        "output directory (default: $" + std::string(kOutDirEnvVar) +
                            " or 'out')");
        cmd->add_option("--seed", seed, "multi-start permutation seed")
            ->group("Solver");
        cmd->add_option("--periods", periods, "override grid.periods")
            ->check(CLI::PositiveNumber)
            ->group("Solver");
        cmd->add_option("--step-years", step_years, "override grid.step_years")
            ->check(CLI::PositiveNumber)
            ->group("Solver");
        cmd->add_option("--solver-tol", solver_tol, "override solver.tol")
            ->check(CLI::PositiveNumber)
            ->group("Solver");
        cmd->add_option("--scenario", scenario,
                        "optimal | baseline | fixed-controls")
            ->check(CLI::IsMember({"optimal", "baseline", "fixed-controls"}))
            ->group("Solver");
    };

    auto* solve_cmd = app.add_subcommand(
        "solve", "Solve one scenario; writes trajectory.csv, report.txt, manifest.json");
    add_common(solve_cmd, true);

    auto* sweep_cmd = app.add_subcommand(
        "sweep",
        "Damage-coefficient sweep; writes summary.csv, per-run outputs, fig4-6");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--a-values", a_values_raw,
                          "comma-separated damage coefficients")
        ->required();

    auto* figures_cmd = app.add_subcommand(
        "figures", "Emit the damage-literature figures from embedded data");
    add_common(figures_cmd, false);
    figures_cmd->add_option("--which", which, "fig1 | fig2 | fig3 | all");

    auto* ramsey_cmd = app.add_subcommand(
        "ramsey", "Saddle-path analysis of the underlying growth model");
    add_common(ramsey_cmd, false);

    auto* regress_cmd = app.add_subcommand(
        "regress", "State temperature-income regression, all fit variants");
    add_common(regress_cmd, false);

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
    }

    try {
        ModelConfig cfg = config_path.empty() ? default_config()
                                              : load_config(config_path);
        if (!scenario.empty()) {
            if (scenario == "optimal") cfg.mode = RunMode::Optimal;
            else if (scenario == "baseline") cfg.mode = RunMode::Baseline;
            else cfg.mode = RunMode::FixedControls;
        }
        if (seed != 0 || solve_cmd->count("--seed") || sweep_cmd->count("--seed"))
            cfg.solver.seed = seed;
        if (periods > 0) cfg.grid.periods = periods;
        if (step_years > 0) cfg.grid.step_years = step_years;
        if (solver_tol > 0) cfg.solver.tol = solver_tol;
        validate_config(cfg);

        fs::path out(out_dir);
        if (solve_cmd->parsed()) return cmd_solve(config_path, cfg, out);
        if (sweep_cmd->parsed()) {
            std::vector<double> a_values = parse_a_values(a_values_raw);
            if (a_values.empty()) {
                std::cerr << "--a-values is empty\n";
                return 1;
            }
            return cmd_sweep(config_path, cfg, a_values, out);
        }
        if (figures_cmd->parsed()) return cmd_figures(which, cfg, out);
        if (ramsey_cmd->parsed()) return cmd_ramsey(config_path, cfg, out);
        if (regress_cmd->parsed()) return cmd_regress(config_path, cfg, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 1;
}

} // namespace dice
