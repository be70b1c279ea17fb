#include "dice/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dice {

namespace {

struct State2 {
    double c, k;
};

// cdot = c*(gamma*A*k^(gamma-1) - delta - rho - alpha*g_tfp)/alpha
// kdot = A*k^gamma - c - (delta + g_pop)*k
State2 rhs(const RamseyParams& p, const State2& x) {
    double fprime = p.gamma * p.tfp * std::pow(x.k, p.gamma - 1.0);
    State2 d;
    d.c = x.c * (fprime - p.delta - p.rho - p.alpha * p.g_tfp) / p.alpha;
    d.k = p.tfp * std::pow(x.k, p.gamma) - x.c - (p.delta + p.g_pop) * x.k;
    return d;
}

bool valid(const State2& x) {
    return std::isfinite(x.c) && std::isfinite(x.k) && x.c > 0.0 && x.k > 0.0;
}

State2 rk4_step(const RamseyParams& p, const State2& x, double dt) {
    State2 k1 = rhs(p, x);
    State2 x2{x.c + 0.5 * dt * k1.c, x.k + 0.5 * dt * k1.k};
    if (!valid(x2)) return State2{NAN, NAN};
    State2 k2 = rhs(p, x2);
    State2 x3{x.c + 0.5 * dt * k2.c, x.k + 0.5 * dt * k2.k};
    if (!valid(x3)) return State2{NAN, NAN};
    State2 k3 = rhs(p, x3);
    State2 x4{x.c + dt * k3.c, x.k + dt * k3.k};
    if (!valid(x4)) return State2{NAN, NAN};
    State2 k4 = rhs(p, x4);
    return State2{x.c + dt / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c),
                  x.k + dt / 6.0 * (k1.k + 2.0 * k2.k + 2.0 * k3.k + k4.k)};
}

std::pair<std::complex<double>, std::complex<double>> eigs2(const Jacobian2& j) {
    double tr = j.dc_dc + j.dk_dk;
    double det = j.dc_dc * j.dk_dk - j.dc_dk * j.dk_dc;
    std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det));
    std::complex<double> e1 = (tr - disc) / 2.0;
    std::complex<double> e2 = (tr + disc) / 2.0;
    if (e1.real() > e2.real()) std::swap(e1, e2);
    return {e1, e2};
}

} // namespace

SteadyState steady_state(const RamseyParams& p) {
    if (!(p.alpha > 0) || !(p.rho > 0) || !(p.gamma > 0) || !(p.gamma < 1) ||
        !(p.delta > 0) || !(p.tfp > 0))
        throw std::invalid_argument("steady_state: invalid parameters");
    double r = p.rho + p.delta + p.alpha * p.g_tfp;
    if (!(r > 0))
        throw std::invalid_argument("steady_state: no positive stationary capital");
    SteadyState ss{};
    ss.k_star = std::pow(p.gamma * p.tfp / r, 1.0 / (1.0 - p.gamma));
    ss.c_star = p.tfp * std::pow(ss.k_star, p.gamma) - (p.delta + p.g_pop) * ss.k_star;
    if (!(ss.c_star > 0))
        throw std::invalid_argument("steady_state: stationary consumption not positive");
    auto [e1, e2] = jacobian_eigenvalues(p, ss);
    ss.eig1 = e1;
    ss.eig2 = e2;
    return ss;
}

Jacobian2 ramsey_jacobian(const RamseyParams& p, double c, double k) {
    if (!(c > 0) || !(k > 0))
        throw std::invalid_argument("ramsey_jacobian: state must be positive");
    double fprime = p.gamma * p.tfp * std::pow(k, p.gamma - 1.0);
    double fsecond = p.gamma * (p.gamma - 1.0) * p.tfp * std::pow(k, p.gamma - 2.0);
    Jacobian2 j;
    j.dc_dc = (fprime - p.delta - p.rho - p.alpha * p.g_tfp) / p.alpha;
    j.dc_dk = c * fsecond / p.alpha;
    j.dk_dc = -1.0;
    j.dk_dk = fprime - p.delta - p.g_pop;
    return j;
}

std::pair<std::complex<double>, std::complex<double>>
jacobian_eigenvalues(const RamseyParams& p, const SteadyState& ss) {
    return eigs2(ramsey_jacobian(p, ss.c_star, ss.k_star));
}

RamseyPath integrate_ramsey(double k0, double c0, const RamseyParams& p,
                            double horizon, double dt) {
    if (!(k0 > 0) || !(c0 > 0))
        throw std::invalid_argument("integrate_ramsey: initial state must be positive");
    if (!(horizon > 0) || !(dt > 0))
        throw std::invalid_argument("integrate_ramsey: horizon and dt must be positive");
    int steps = static_cast<int>(std::llround(horizon / dt));
    RamseyPath path;
    path.t.reserve(steps + 1);
    path.k.reserve(steps + 1);
    path.c.reserve(steps + 1);
    State2 x{c0, k0};
    path.t.push_back(0.0);
    path.k.push_back(x.k);
    path.c.push_back(x.c);
    for (int i = 1; i <= steps; ++i) {
        State2 next = rk4_step(p, x, dt);
        if (!valid(next)) {
            path.truncated = true;
            break;
        }
        x = next;
        path.t.push_back(i * dt);
        path.k.push_back(x.k);
        path.c.push_back(x.c);
    }
    return path;
}

SaddlePath saddle_path(double k0, const RamseyParams& p, double horizon, double dt) {
    if (!(k0 > 0))
        throw std::invalid_argument("saddle_path: k0 must be positive");
    SteadyState ss = steady_state(p);
    double lam1 = ss.eig1.real();
    double lam2 = ss.eig2.real();
    if (!(lam1 < 0) || !(lam2 > 0))
        throw std::runtime_error("saddle_path: steady state is not a saddle");

    // Unstable left eigenvector w = (1, (lam2 - J11)/J21); its coordinate on
    // the deviation grows like e^(lam2*t) and its sign at exit classifies the
    // shot: positive means c0 was above the saddle value.
    Jacobian2 j = ramsey_jacobian(p, ss.c_star, ss.k_star);
    double wu_k = (lam2 - j.dc_dc) / j.dk_dc;
    auto unstable_coord = [&](const State2& x) {
        return (x.c - ss.c_star) + wu_k * (x.k - ss.k_star);
    };

    const double u_exit = 0.5 * ss.c_star;
    auto classify = [&](double c0) {
        State2 x{c0, k0};
        double u = unstable_coord(x);
        int steps = static_cast<int>(std::llround(horizon / dt));
        for (int i = 0; i < steps; ++i) {
            State2 next = rk4_step(p, x, dt);
            if (!valid(next)) break;
            x = next;
            u = unstable_coord(x);
            if (std::fabs(u) > u_exit) break;
        }
        return u;
    };

    double lo = 0.0;
    double hi = p.tfp * std::pow(k0, p.gamma);
    if (!(classify(hi * (1.0 - 1e-12)) > 0) || !(classify(std::min(1e-9, hi * 1e-9)) < 0)) {
        std::ostringstream msg;
        msg << "saddle_path: bracket failure at k0=" << k0
            << " (lo exit " << classify(std::min(1e-9, hi * 1e-9))
            << ", hi exit " << classify(hi * (1.0 - 1e-12)) << ")";
        throw std::runtime_error(msg.str());
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (classify(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    double c0 = 0.5 * (lo + hi);

    RamseyPath raw = integrate_ramsey(k0, c0, p, horizon, dt);
    size_t nearest = 0;
    double best = INFINITY;
    for (size_t i = 0; i < raw.t.size(); ++i) {
        double d = std::fabs(raw.k[i] - ss.k_star) / ss.k_star +
                   std::fabs(raw.c[i] - ss.c_star) / ss.c_star;
        if (d < best) {
            best = d;
            nearest = i;
        }
    }

    // Replace everything past the closest approach with the linearized decay
    // along the stable eigendirection. The raw forward solution past this
    // point is dominated by e^(lam2*t) roundoff amplification.
    double vs_c = j.dc_dk;           // right eigenvector (J12, lam - J11)
    double vs_k = lam1 - j.dc_dc;
    double ws_c = 1.0;               // left eigenvector for lam1
    double ws_k = (lam1 - j.dc_dc) / j.dk_dc;
    double dc = raw.c[nearest] - ss.c_star;
    double dk = raw.k[nearest] - ss.k_star;
    double s0 = (ws_c * dc + ws_k * dk) / (ws_c * vs_c + ws_k * vs_k);

    SaddlePath out;
    out.c0 = c0;
    out.analytic_tail_begin = static_cast<int>(nearest);
    out.path.t = raw.t;
    out.path.k = raw.k;
    out.path.c = raw.c;
    int total = static_cast<int>(std::llround(horizon / dt));
    out.path.t.resize(nearest + 1);
    out.path.k.resize(nearest + 1);
    out.path.c.resize(nearest + 1);
    for (int i = static_cast<int>(nearest) + 1; i <= total; ++i) {
        double t = i * dt;
        double decay = s0 * std::exp(lam1 * (t - raw.t[nearest]));
        out.path.t.push_back(t);
        out.path.c.push_back(ss.c_star + decay * vs_c);
        out.path.k.push_back(ss.k_star + decay * vs_k);
    }
    return out;
}

TransversalityDiagnostic transversality_diagnostic(const RamseyPath& path,
                                                   const RamseyParams& p) {
    if (path.t.size() < 4)
        throw std::invalid_argument("transversality_diagnostic: path too short");
    TransversalityDiagnostic d;
    d.values.resize(path.t.size());
    for (size_t i = 0; i < path.t.size(); ++i)
        d.values[i] = std::pow(path.c[i], -p.alpha) * path.k[i] *
                      std::exp(-p.rho * path.t[i]);
    size_t n = path.t.size();
    size_t tail = std::max<size_t>(n - std::max<size_t>(n / 5, 2), 0);
    d.tail_log_slope = (std::log(d.values[n - 1]) - std::log(d.values[tail])) /
                       (path.t[n - 1] - path.t[tail]);
    d.vanishing = d.tail_log_slope < -1e-8;
    return d;
}

} // namespace dice
