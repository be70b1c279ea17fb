#include "dice/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <future>
#include <random>
#include <stdexcept>

namespace dice {

namespace {

double crra_slope(double cpc, double alpha, double cpc_floor) {
    double c = std::max(cpc, cpc_floor);
    return std::fabs(1.0 - alpha) <= 1e-6 ? 1.0 / c : std::pow(c, -alpha);
}

struct Pulse {
    int t = -1;
    double de = 0.0;  // GtCO2/yr added to period t's emission rate
    double dc = 0.0;  // trillions USD/yr added to period t's consumption
};

// Lean forward pass shared by the objective, the adjoint, and the carbon
// pulses. Mirrors period_transition exactly; keep_detail stores what the
// backward sweep needs.
struct Rollout {
    double w = -INFINITY;
    bool ok = false;
    bool penalized = false;
    bool floor_any = false;
    bool clamp_any = false;
    std::vector<double> k, m1;  // state, length periods+1
    std::vector<double> ta, yg, yf, d, dprime, uprime, cpc;
    std::vector<uint8_t> floored;
};

Rollout run_rollout(const ModelConfig& cfg, const ExogenousPaths& paths,
                    const ClimateParams& cp, const ControlPath& u,
                    const Pulse& pulse, bool keep_detail) {
    const int n = cfg.grid.periods;
    const double h = cfg.grid.step_years;
    if (static_cast<int>(u.s.size()) != n || static_cast<int>(u.mu.size()) != n)
        throw std::invalid_argument("controls must have one entry per period");
    const bool cap_chan = cfg.damage.channel == DamageChannel::Capital;

    Rollout r;
    if (keep_detail) {
        r.k.resize(n + 1);
        r.m1.resize(n + 1);
        r.ta.resize(n);
        r.yg.resize(n);
        r.yf.resize(n);
        r.d.resize(n);
        r.dprime.resize(n);
        r.uprime.resize(n);
        r.cpc.resize(n);
        r.floored.resize(n);
    }

    double k = cfg.k0;
    ClimateState cs = initial_climate_state(cfg);
    double w = 0.0;
    for (int t = 0; t < n; ++t) {
        double yg = gross_output(paths.A[t], paths.L[t] / 1000.0, k, cfg.gamma);
        double dt_pos = std::max(cs.t_at, 0.0);
        bool clamped = false;
        double d = damage_fraction(cfg.damage, dt_pos, &clamped);
        r.clamp_any = r.clamp_any || clamped;

        double yn = cap_chan ? yg * std::pow(1.0 - d, cfg.gamma) : yg * (1.0 - d);
        double pbs_tr = paths.p_bs[t] * kUsdPerTco2ToTrillions;
        double ac = abatement_cost(u.mu[t], paths.sigma[t], yg, pbs_tr, cfg.theta2);
        double lambda = yn > 0.0 ? ac / yn : 0.0;
        double yf = (1.0 - lambda) * yn;

        double consumption = (1.0 - u.s[t]) * yf;
        if (pulse.t == t) consumption += pulse.dc;
        double cpc = 1000.0 * consumption / paths.L[t];
        if (cpc < cfg.floors.cpc) r.penalized = true;
        w += h * paths.L[t] * std::exp(-cfg.rho * h * t) *
             crra_utility(cpc, cfg.alpha, cfg.floors.cpc);

        double kadj = cap_chan ? k * (1.0 - d) : k;
        double knext = step_capital(kadj, yf, u.s[t], cfg.delta,
                                    cfg.grid.step_years, cfg.floors.capital);
        bool floored = knext <= cfg.floors.capital;
        r.floor_any = r.floor_any || floored;

        double e_total = industrial_emissions(u.mu[t], paths.sigma[t], yg) +
                         paths.e_exo[t];
        if (pulse.t == t) e_total += pulse.de;
        ClimateState carbon = step_carbon(cs, h * e_total, cp);
        if (!(carbon.m_at > 0.0)) return r;
        int fi = std::min(t + 1, n - 1);
        double f = cp.f2x * std::log2(carbon.m_at / cp.m_pre) + cp.f_exo[fi];
        ClimateState next = step_temperature(carbon, f, cp);

        if (keep_detail) {
            r.k[t] = k;
            r.m1[t] = cs.m_at;
            r.ta[t] = cs.t_at;
            r.yg[t] = yg;
            r.yf[t] = yf;
            r.d[t] = d;
            r.dprime[t] = cs.t_at > 0.0
                              ? damage_fraction_derivative(cfg.damage, dt_pos)
                              : 0.0;
            r.uprime[t] = crra_slope(cpc, cfg.alpha, cfg.floors.cpc);
            r.cpc[t] = cpc;
            r.floored[t] = floored ? 1 : 0;
        }
        k = knext;
        cs = next;
        if (!std::isfinite(k) || !std::isfinite(cs.t_at) || !std::isfinite(w))
            return r;
    }
    if (keep_detail) {
        r.k[n] = k;
        r.m1[n] = cs.m_at;
    }
    r.w = w;
    r.ok = std::isfinite(w);
    return r;
}

} // namespace

std::string solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Stalled: return "stalled";
    }
    return "?";
}

double crra_utility(double cpc, double alpha, double cpc_floor) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("crra_utility: alpha must be > 0");
    if (!(cpc_floor > 0.0))
        throw std::invalid_argument("crra_utility: floor must be > 0");
    const bool log_branch = std::fabs(1.0 - alpha) <= 1e-6;
    auto base = [&](double c) {
        return log_branch ? std::log(c)
                          : (std::pow(c, 1.0 - alpha) - 1.0) / (1.0 - alpha);
    };
    if (cpc >= cpc_floor) return base(cpc);
    return base(cpc_floor) +
           crra_slope(cpc_floor, alpha, cpc_floor) * (cpc - cpc_floor);
}

Simulator::Simulator(const ModelConfig& cfg)
    : cfg_(cfg), paths_(exogenous_paths(cfg)), climate_(climate_params(cfg, paths_)) {
    const double h = cfg_.grid.step_years;
    w_ref_ = 0.0;
    for (int t = 0; t < cfg_.grid.periods; ++t)
        w_ref_ += h * paths_.L[t] * std::exp(-cfg_.rho * h * t);
}

Trajectory Simulator::simulate(const ControlPath& controls) const {
    const int n = cfg_.grid.periods;
    if (static_cast<int>(controls.s.size()) != n ||
        static_cast<int>(controls.mu.size()) != n)
        throw std::invalid_argument("controls must have one entry per period");
    Trajectory tr;
    tr.records.reserve(n);
    EconomyState econ{cfg_.k0};
    ClimateState climate = initial_climate_state(cfg_);
    for (int t = 0; t < n; ++t) {
        TransitionResult res = period_transition(econ, climate, controls.s[t],
                                                 controls.mu[t], t, cfg_, paths_,
                                                 climate_);
        tr.records.push_back(res.record);
        tr.floor_hit = tr.floor_hit || res.floor_hit;
        tr.damage_clamped = tr.damage_clamped || res.damage_clamped;
        if (res.record.c_percap < cfg_.floors.cpc) tr.penalized = true;
        econ = res.econ;
        climate = res.climate;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "config %s tol=%g gradient=%s seed=%u",
                  config_hash_hex(cfg_).c_str(), cfg_.solver.tol,
                  cfg_.solver.gradient == GradientMode::Adjoint ? "adjoint" : "fd",
                  cfg_.solver.seed);
    tr.provenance = buf;
    return tr;
}

ObjectiveValue Simulator::objective(const ControlPath& controls) const {
    Rollout r = run_rollout(cfg_, paths_, climate_, controls, Pulse{}, false);
    return ObjectiveValue{r.w, r.penalized, r.floor_any};
}

double Simulator::objective_normalizer() const { return w_ref_; }

void Simulator::adjoint_gradient(const ControlPath& controls,
                                 std::vector<double>& grad_s,
                                 std::vector<double>& grad_mu) const {
    const int n = cfg_.grid.periods;
    const double h = cfg_.grid.step_years;
    Rollout r = run_rollout(cfg_, paths_, climate_, controls, Pulse{}, true);
    if (!r.ok)
        throw std::runtime_error("adjoint_gradient: non-finite trajectory");
    grad_s.assign(n, 0.0);
    grad_mu.assign(n, 0.0);

    const bool cap_chan = cfg_.damage.channel == DamageChannel::Capital;
    const double pow1md = std::pow(1.0 - cfg_.delta, cfg_.grid.step_years);
    const double ln2 = std::log(2.0);
    double lk = 0.0, lm[3] = {0.0, 0.0, 0.0}, lta = 0.0, lto = 0.0;
    for (int t = n - 1; t >= 0; --t) {
        double rr = std::exp(-cfg_.rho * h * t);
        double sigma = paths_.sigma[t];
        double pbs_tr = paths_.p_bs[t] * kUsdPerTco2ToTrillions;
        double mu = controls.mu[t];
        double s = controls.s[t];
        double yg = r.yg[t], yf = r.yf[t], d = r.d[t];
        bool fl = r.floored[t] != 0;

        // forcing feeds this period's emissions into next period's t_at
        double f_m1 = climate_.f2x / (r.m1[t + 1] * ln2);
        double leff0 = lm[0] + lta * climate_.c1 * f_m1;
        double a_e = leff0 * h / climate_.gtco2_per_gtc;

        double a_yf = h * rr * r.uprime[t] * 1000.0 * (1.0 - s);
        if (!fl) a_yf += lk * h * s;

        double dyn_dyg = cap_chan ? std::pow(1.0 - d, cfg_.gamma) : 1.0 - d;
        double dac_dyg = pbs_tr * sigma / cfg_.theta2 * std::pow(mu, cfg_.theta2);
        double a_yg = a_yf * (dyn_dyg - dac_dyg) + a_e * sigma * (1.0 - mu);

        double dyn_dd = cap_chan
                            ? -cfg_.gamma * std::pow(1.0 - d, cfg_.gamma - 1.0) * yg
                            : -yg;
        double a_d = a_yf * dyn_dd;
        if (cap_chan && !fl) a_d -= lk * pow1md * r.k[t];

        grad_s[t] = -h * rr * r.uprime[t] * 1000.0 * yf;
        if (!fl) grad_s[t] += lk * h * yf;
        grad_mu[t] = -a_yf * pbs_tr * sigma * std::pow(mu, cfg_.theta2 - 1.0) * yg -
                     a_e * sigma * yg;

        double nlk = a_yg * cfg_.gamma * yg / r.k[t];
        if (!fl) nlk += lk * pow1md * (cap_chan ? 1.0 - d : 1.0);
        double leff[3] = {leff0, lm[1], lm[2]};
        double nlm[3];
        for (int from = 0; from < 3; ++from)
            nlm[from] = leff[0] * climate_.transfer[0][from] +
                        leff[1] * climate_.transfer[1][from] +
                        leff[2] * climate_.transfer[2][from];
        double nlta = lta * (1.0 - climate_.c1 * (climate_.f2x / climate_.ecs) -
                             climate_.c1 * climate_.c3) +
                      lto * climate_.c4 + a_d * r.dprime[t];
        double nlto = lta * climate_.c1 * climate_.c3 + lto * (1.0 - climate_.c4);
        lk = nlk;
        lm[0] = nlm[0];
        lm[1] = nlm[1];
        lm[2] = nlm[2];
        lta = nlta;
        lto = nlto;
    }
}

void Simulator::fd_gradient(const ControlPath& controls,
                            std::vector<double>& grad_s,
                            std::vector<double>& grad_mu) const {
    const int n = cfg_.grid.periods;
    const double step = 1e-6;
    grad_s.assign(n, 0.0);
    grad_mu.assign(n, 0.0);
    ControlPath v = controls;
    for (int t = 0; t < n; ++t) {
        v.s[t] = controls.s[t] + step;
        double wp = objective(v).w;
        v.s[t] = controls.s[t] - step;
        double wm = objective(v).w;
        v.s[t] = controls.s[t];
        grad_s[t] = (wp - wm) / (2.0 * step);

        v.mu[t] = controls.mu[t] + step;
        wp = objective(v).w;
        v.mu[t] = controls.mu[t] - step;
        wm = objective(v).w;
        v.mu[t] = controls.mu[t];
        grad_mu[t] = (wp - wm) / (2.0 * step);
    }
}

double utility_aggregate(const std::vector<double>& cpc, const ModelConfig& cfg,
                         const ExogenousPaths& paths) {
    if (static_cast<int>(cpc.size()) != cfg.grid.periods)
        throw std::invalid_argument("utility_aggregate: one value per period required");
    const double h = cfg.grid.step_years;
    double w = 0.0;
    for (int t = 0; t < cfg.grid.periods; ++t)
        w += h * paths.L[t] * std::exp(-cfg.rho * h * t) *
             crra_utility(cpc[t], cfg.alpha, cfg.floors.cpc);
    return w;
}

namespace {

// theta = (s_0..s_{ms-1}, mu_1..mu_{n-1}); the last terminal_savings_periods
// savings rates are frozen at the long-run rate and mu_0 is pinned.
struct ThetaLayout {
    int n;
    int ms;
    int dim() const { return ms + n - 1; }
};

struct Box {
    std::vector<double> lo, hi;
};

ControlPath unpack(const ModelConfig& cfg, const ThetaLayout& lay,
                   const std::vector<double>& x) {
    ControlPath u;
    u.s.assign(lay.n, terminal_savings_rate(cfg));
    u.mu.assign(lay.n, cfg.exo.mu_first_period);
    for (int i = 0; i < lay.ms; ++i) u.s[i] = x[i];
    for (int t = 1; t < lay.n; ++t) u.mu[t] = x[lay.ms + t - 1];
    return u;
}

Box control_box(const ModelConfig& cfg, const ExogenousPaths& paths,
                const ThetaLayout& lay) {
    Box b;
    b.lo.assign(lay.dim(), 0.0);
    b.hi.assign(lay.dim(), 1.0);
    const double h = cfg.grid.step_years;
    for (int t = 1; t < lay.n; ++t) {
        double cap = paths.mu_cap[t];
        if (cfg.mode == RunMode::Baseline) {
            double p_cap = cfg.price_cap.p0 * std::exp(cfg.price_cap.growth * h * t);
            cap = std::min(cap, optimal_mitigation(p_cap, paths.p_bs[t],
                                                   cfg.theta2, paths.mu_cap[t]));
        }
        b.hi[lay.ms + t - 1] = cap;
    }
    return b;
}

void project(std::vector<double>& x, const Box& b) {
    for (size_t i = 0; i < x.size(); ++i)
        x[i] = std::min(std::max(x[i], b.lo[i]), b.hi[i]);
}

struct SpgResult {
    std::vector<double> x;
    double f = INFINITY;
    double kkt = INFINITY;
    int iters = 0;
    bool converged = false;
};

// Spectral projected gradient (Barzilai-Borwein step, non-monotone line
// search over the last 10 values) minimizing f over the box.
SpgResult spg(const std::function<double(const std::vector<double>&)>& fval,
              const std::function<void(const std::vector<double>&,
                                       std::vector<double>&)>& fgrad,
              std::vector<double> x, const Box& box, double tol, int max_iters) {
    project(x, box);
    const size_t m = x.size();
    std::vector<double> g(m), gnew(m), xnew(m), dir(m);
    auto kkt_at = [&](const std::vector<double>& xx, const std::vector<double>& gg) {
        double worst = 0.0;
        for (size_t i = 0; i < m; ++i) {
            double p = std::min(std::max(xx[i] - gg[i], box.lo[i]), box.hi[i]) - xx[i];
            worst = std::max(worst, std::fabs(p));
        }
        return worst;
    };

    SpgResult res;
    double fx = fval(x);
    fgrad(x, g);
    std::deque<double> hist{fx};
    double alpha = 1.0;
    int it = 0;
    for (; it < max_iters; ++it) {
        res.kkt = kkt_at(x, g);
        if (res.kkt < tol) {
            res.converged = true;
            break;
        }
        double gtd = 0.0;
        for (size_t i = 0; i < m; ++i) {
            dir[i] = std::min(std::max(x[i] - alpha * g[i], box.lo[i]), box.hi[i]) - x[i];
            gtd += g[i] * dir[i];
        }
        if (!(gtd < 0.0)) {
            alpha = 1.0;
            continue;
        }
        double fref = *std::max_element(hist.begin(), hist.end());
        double lam = 1.0;
        double fnew;
        bool ok = false;
        while (lam >= 1e-20) {
            for (size_t i = 0; i < m; ++i) xnew[i] = x[i] + lam * dir[i];
            fnew = fval(xnew);
            if (fnew <= fref + 1e-4 * lam * gtd) {
                ok = true;
                break;
            }
            lam *= 0.5;
        }
        if (!ok) break;
        fgrad(xnew, gnew);
        double sts = 0.0, sty = 0.0;
        for (size_t i = 0; i < m; ++i) {
            double si = xnew[i] - x[i];
            sts += si * si;
            sty += si * (gnew[i] - g[i]);
        }
        alpha = sty > 1e-300 ? std::min(std::max(sts / sty, 1e-10), 1e10) : 1e10;
        x.swap(xnew);
        g.swap(gnew);
        fx = fnew;
        hist.push_back(fx);
        if (hist.size() > 10) hist.pop_front();
    }
    res.x = std::move(x);
    res.f = fx;
    res.iters = it;
    return res;
}

struct StartOutcome {
    ControlPath controls;
    double w = -INFINITY;
    double kkt = INFINITY;
    int iters = 0;
    bool converged = false;
    bool penalized = false;
    bool floor_hit = false;
};

} // namespace

SolveReport solve(const ModelConfig& cfg) {
    Simulator sim(cfg);
    const int n = cfg.grid.periods;
    SolveReport rep;

    if (cfg.mode == RunMode::FixedControls) {
        ControlPath u;
        u.s.assign(n, cfg.fixed_s);
        u.mu.assign(n, cfg.fixed_mu);
        u.mu[0] = cfg.exo.mu_first_period;
        ObjectiveValue ov = sim.objective(u);
        rep.status = SolveStatus::Converged;
        rep.objective = ov.w;
        rep.objective_normalized = ov.w / sim.objective_normalizer();
        rep.iterations = 0;
        rep.kkt_residual = 0.0;
        rep.trajectory = sim.simulate(u);
        rep.controls = std::move(u);
        rep.message = "fixed controls evaluated, no optimization";
        return rep;
    }

    ThetaLayout lay{n, n - cfg.solver.terminal_savings_periods};
    Box box = control_box(cfg, sim.paths(), lay);
    const double wref = sim.objective_normalizer();

    auto fval = [&](const std::vector<double>& x) {
        double w = sim.objective(unpack(cfg, lay, x)).w;
        return std::isfinite(w) ? -w / wref : INFINITY;
    };
    std::vector<double> gs, gmu;
    auto fgrad = [&](const std::vector<double>& x, std::vector<double>& g) {
        ControlPath u = unpack(cfg, lay, x);
        if (cfg.solver.gradient == GradientMode::Adjoint)
            sim.adjoint_gradient(u, gs, gmu);
        else
            sim.fd_gradient(u, gs, gmu);
        g.resize(lay.dim());
        for (int i = 0; i < lay.ms; ++i) g[i] = -gs[i] / wref;
        for (int t = 1; t < n; ++t) g[lay.ms + t - 1] = -gmu[t] / wref;
    };

    auto make_start = [&](double s0, const std::function<double(int)>& mu0) {
        std::vector<double> x(lay.dim());
        for (int i = 0; i < lay.ms; ++i) x[i] = s0;
        for (int t = 1; t < n; ++t) x[lay.ms + t - 1] = mu0(t);
        project(x, box);
        return x;
    };
    std::vector<std::vector<double>> starts;
    starts.push_back(make_start(0.25, [&](int) { return 0.05; }));
    starts.push_back(make_start(0.25, [&](int t) { return box.hi[lay.ms + t - 1]; }));
    starts.push_back(make_start(0.25, [&](int t) { return t / 20.0; }));
    starts.push_back(make_start(0.35, [&](int t) { return box.hi[lay.ms + t - 1]; }));
    starts.push_back(make_start(0.15, [&](int) { return 0.5; }));

    std::vector<size_t> order(starts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937 rng(cfg.solver.seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<StartOutcome> outcomes;
    for (size_t idx : order) {
        SpgResult sr = spg(fval, fgrad, starts[idx], box, cfg.solver.tol,
                           cfg.solver.max_iters);
        StartOutcome out;
        out.controls = unpack(cfg, lay, sr.x);
        ObjectiveValue ov = sim.objective(out.controls);
        out.w = ov.w;
        out.kkt = sr.kkt;
        out.iters = sr.iters;
        out.converged = sr.converged;
        out.penalized = ov.penalized;
        out.floor_hit = ov.floor_hit;
        outcomes.push_back(std::move(out));
    }

    auto better = [](const StartOutcome& a, const StartOutcome& b) {
        return a.w > b.w;
    };
    int best = 0;
    int best_conv = -1;
    bool all_floor = true;
    int consec = 0, max_consec = 0;
    for (int i = 0; i < static_cast<int>(outcomes.size()); ++i) {
        if (better(outcomes[i], outcomes[best])) best = i;
        if (outcomes[i].converged &&
            (best_conv < 0 || better(outcomes[i], outcomes[best_conv])))
            best_conv = i;
        all_floor = all_floor && outcomes[i].floor_hit;
        consec = outcomes[i].penalized ? consec + 1 : 0;
        max_consec = std::max(max_consec, consec);
    }

    char msg[200];
    int winner;
    if (outcomes[best].penalized && (all_floor || max_consec >= 3)) {
        rep.status = SolveStatus::Infeasible;
        winner = best;
        std::snprintf(msg, sizeof(msg),
                      "objective pinned at the consumption-floor penalty branch "
                      "on %d consecutive starts%s",
                      max_consec,
                      all_floor ? "; capital floor activated on every start" : "");
    } else if (best_conv >= 0) {
        rep.status = SolveStatus::Converged;
        winner = best_conv;
        std::snprintf(msg, sizeof(msg), "start %d of %zu converged in %d iterations",
                      winner + 1, outcomes.size(), outcomes[winner].iters);
    } else {
        rep.status = SolveStatus::Stalled;
        winner = best;
        std::snprintf(msg, sizeof(msg),
                      "no start reached kkt tolerance %g; best residual %g",
                      cfg.solver.tol, outcomes[winner].kkt);
    }

    rep.objective = outcomes[winner].w;
    rep.objective_normalized = outcomes[winner].w / wref;
    rep.iterations = outcomes[winner].iters;
    rep.kkt_residual = outcomes[winner].kkt;
    rep.trajectory = sim.simulate(outcomes[winner].controls);
    rep.controls = std::move(outcomes[winner].controls);
    rep.message = msg;
    return rep;
}

std::vector<SolveReport> sensitivity_sweep(const ModelConfig& cfg,
                                           const std::vector<double>& a_values) {
    std::vector<std::future<SolveReport>> futures;
    futures.reserve(a_values.size());
    for (double a : a_values) {
        ModelConfig run_cfg = cfg;
        run_cfg.damage.a = a;
        futures.push_back(std::async(std::launch::async,
                                     [run_cfg] { return solve(run_cfg); }));
    }
    std::vector<SolveReport> out;
    out.reserve(a_values.size());
    for (size_t i = 0; i < futures.size(); ++i) {
        try {
            out.push_back(futures[i].get());
        } catch (const std::exception& e) {
            SolveReport failed;
            failed.status = SolveStatus::Stalled;
            failed.message = std::string("error: ") + e.what();
            out.push_back(std::move(failed));
        }
    }
    return out;
}

SweepSummaryRow summarize_run(const SolveReport& report, double a) {
    SweepSummaryRow row{};
    row.a = a;
    row.status = report.status;
    const auto& rec = report.trajectory.records;
    if (rec.empty()) return row;

    size_t peak = 0;
    row.min_k_over_y = INFINITY;
    row.min_c_percap = INFINITY;
    for (size_t t = 0; t < rec.size(); ++t) {
        if (rec[t].damage_frac > rec[peak].damage_frac) peak = t;
        row.min_k_over_y = std::min(row.min_k_over_y, rec[t].k_over_y);
        row.min_c_percap = std::min(row.min_c_percap, rec[t].c_percap);
    }
    row.peak_damage_frac = rec[peak].damage_frac;
    row.peak_damage_tat = rec[peak].t_at;
    row.peak_damage_year = rec[peak].year;

    bool declined = false;
    double running_max = rec[0].c_percap;
    for (size_t t = 1; t < rec.size(); ++t) {
        if (rec[t].c_percap < running_max) {
            declined = true;
            break;
        }
        running_max = std::max(running_max, rec[t].c_percap);
    }
    if (!declined) {
        row.recovery_year = rec[0].year;
        return row;
    }
    size_t t_min = 0;
    for (size_t t = 1; t < rec.size(); ++t)
        if (rec[t].c_percap < rec[t_min].c_percap) t_min = t;
    double pre_dip_max = rec[0].c_percap;
    for (size_t t = 0; t <= t_min; ++t)
        pre_dip_max = std::max(pre_dip_max, rec[t].c_percap);
    row.recovery_year = 0;
    for (size_t t = t_min; t < rec.size(); ++t)
        if (rec[t].c_percap >= pre_dip_max) {
            row.recovery_year = rec[t].year;
            break;
        }
    return row;
}

double social_cost_of_carbon(const SolveReport& report, const ModelConfig& cfg,
                             int t, double pulse_gtco2, double pulse_trillions) {
    if (report.status != SolveStatus::Converged)
        throw std::invalid_argument("social_cost_of_carbon: run did not converge");
    if (t < 0 || t >= cfg.grid.periods)
        throw std::invalid_argument("social_cost_of_carbon: period out of range");
    if (!(pulse_gtco2 > 0.0) || !(pulse_trillions > 0.0))
        throw std::invalid_argument("social_cost_of_carbon: pulses must be positive");
    Simulator sim(cfg);
    auto w_at = [&](double de, double dc) {
        Rollout r = run_rollout(cfg, sim.paths(), sim.climate(), report.controls,
                                Pulse{t, de, dc}, false);
        if (!r.ok)
            throw std::runtime_error("social_cost_of_carbon: non-finite trajectory");
        return r.w;
    };
    double dwde = (w_at(pulse_gtco2, 0.0) - w_at(-pulse_gtco2, 0.0)) /
                  (2.0 * pulse_gtco2);
    double dwdc = (w_at(0.0, pulse_trillions) - w_at(0.0, -pulse_trillions)) /
                  (2.0 * pulse_trillions);
    return -1000.0 * dwde / dwdc;
}

} // namespace dice
