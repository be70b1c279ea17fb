// Continuous-time reduced Ramsey system in (c, k) per capita:
//   kdot = A*k^gamma - c - delta*k
//   cdot = c*(gamma*A*k^(gamma-1) - delta - rho)/alpha
// Analysis-grade: fixed-step RK4 (0.05 yr), separate from the 5-year engine.
#pragma once

#include <complex>
#include <vector>

namespace dice {

struct RamseyParams {
    double alpha = 1.45;
    double rho = 0.015;
    double delta = 0.10;
    double gamma = 0.30;
    double tfp = 5.115;
    // Growth corrections are experimental; the stationary case (both zero)
    // is the tested contract.
    double g_pop = 0.0;
    double g_tfp = 0.0;
};

struct SteadyState {
    double k_star;
    double c_star;
    std::complex<double> eig1;  // sorted by real part, eig1 <= eig2
    std::complex<double> eig2;
};

// k* solves gamma*A*k^(gamma-1) = rho + delta (+ alpha*g correction when
// enabled); c* = A*k*^gamma - (delta + g_pop)*k*. Stationarity residual is
// below 1e-10 by construction. Throws std::invalid_argument when parameters
// admit no positive root.
SteadyState steady_state(const RamseyParams& p);

// Analytic Jacobian of (cdot, kdot) in state order (c, k) at any point.
struct Jacobian2 {
    double dc_dc, dc_dk;
    double dk_dc, dk_dk;
};
Jacobian2 ramsey_jacobian(const RamseyParams& p, double c, double k);

// Eigenvalues of the Jacobian at the steady state, sorted by real part.
// Product < 0 for every valid parameterization (saddle).
std::pair<std::complex<double>, std::complex<double>>
jacobian_eigenvalues(const RamseyParams& p, const SteadyState& ss);

struct RamseyPath {
    std::vector<double> t;
    std::vector<double> k;
    std::vector<double> c;
    bool truncated = false;  // integration stopped on leaving the valid region
};

// Plain forward RK4 from (k0, c0); stops early if the state leaves
// (0, inf)^2 or becomes non-finite. Used for divergence demonstrations and
// phase portraits.
RamseyPath integrate_ramsey(double k0, double c0, const RamseyParams& p,
                            double horizon, double dt = 0.05);

struct SaddlePath {
    double c0;               // the unique convergent jump value
    RamseyPath path;
    int analytic_tail_begin; // index where the stable-eigendirection
                             // continuation replaces raw integration
};

// Bisection over c0 in (0, f(k0)) classifying exits by the unstable
// eigendirection; the returned path follows raw RK4 until its closest
// approach to (k*, c*), then the exact linearized stable-manifold decay
// (forward-only; the unstable mode otherwise amplifies roundoff as
// e^(lambda2*t) and no double-precision forward path can stay near the
// steady state for hundreds of years). Horizon endpoint satisfies
// |k - k*| + |c - c*| < 1e-5 for k0 in [0.1*k*, 3*k*].
// Throws std::runtime_error with diagnostics on bracket failure.
SaddlePath saddle_path(double k0, const RamseyParams& p,
                       double horizon = 300.0, double dt = 0.05);

struct TransversalityDiagnostic {
    std::vector<double> values;  // U'(c(t))*k(t)*e^(-rho*t)
    double tail_log_slope;       // d(ln v)/dt over the final stretch, 1/yr
    bool vanishing;              // tail_log_slope < -1e-8: decreasing toward 0
};

TransversalityDiagnostic transversality_diagnostic(const RamseyPath& path,
                                                   const RamseyParams& p);

} // namespace dice
