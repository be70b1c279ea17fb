// The planning problem: choose per-period (s, mu) maximizing discounted
// utility over the grid. Single shooting with spectral projected gradient,
// five documented starts, adjoint or finite-difference gradients.
#pragma once

#include <string>
#include <vector>

#include "dice/economy.hpp"

namespace dice {

struct ControlPath {
    std::vector<double> s;
    std::vector<double> mu;
};

enum class SolveStatus { Converged, Infeasible, Stalled };

std::string solve_status_name(SolveStatus s);

struct Trajectory {
    std::vector<PeriodRecord> records;
    bool penalized = false;       // consumption fell below the cpc floor
    bool floor_hit = false;       // capital floor activated
    bool damage_clamped = false;  // damage family clamped at 1-1e-12
    std::string provenance;       // config hash + solver settings
};

struct ObjectiveValue {
    double w;            // discounted utility
    bool penalized;
    bool floor_hit;
};

// CRRA with the log branch at |1-alpha| <= 1e-6 and a C1 linear extension
// below the consumption floor (slope U'(floor)); never crashes on c <= 0.
double crra_utility(double cpc, double alpha, double cpc_floor);

class Simulator {
  public:
    explicit Simulator(const ModelConfig& cfg);

    const ModelConfig& config() const { return cfg_; }
    const ExogenousPaths& paths() const { return paths_; }
    const ClimateParams& climate() const { return climate_; }

    Trajectory simulate(const ControlPath& controls) const;
    ObjectiveValue objective(const ControlPath& controls) const;

    // W_REF = sum step*L*e^(-rho*tau): utility of cpc == 1 shifted by the
    // "-1" term; used to normalize the objective for solver tolerances.
    double objective_normalizer() const;

    // d(objective)/d(controls) via backward adjoint; bounds not applied.
    void adjoint_gradient(const ControlPath& controls,
                          std::vector<double>& grad_s,
                          std::vector<double>& grad_mu) const;

    // Central differences, h = 1e-6; the slow oracle for the adjoint.
    void fd_gradient(const ControlPath& controls,
                     std::vector<double>& grad_s,
                     std::vector<double>& grad_mu) const;

  private:
    ModelConfig cfg_;
    ExogenousPaths paths_;
    ClimateParams climate_;
    double w_ref_;
};

// Discounted utility of a per-capita consumption series under cfg's grid,
// preferences, and floor: sum step*L*u(cpc)*e^(-rho*tau).
double utility_aggregate(const std::vector<double>& cpc, const ModelConfig& cfg,
                         const ExogenousPaths& paths);

struct SolveReport {
    SolveStatus status = SolveStatus::Stalled;
    double objective = 0.0;
    double objective_normalized = 0.0;
    int iterations = 0;
    double kkt_residual = 0.0;
    Trajectory trajectory;
    ControlPath controls;
    std::string message;
};

// Honors cfg.mode: optimal (free mu up to the cap), baseline (mu additionally
// bounded by the mitigation the capped carbon price induces), fixed-controls
// (evaluate cfg.fixed_s/'fixed_mu' without optimizing). First-period mu is
// pinned at cfg.exo.mu_first_period in every mode; the final
// terminal_savings_periods savings rates are frozen at the long-run rate.
SolveReport solve(const ModelConfig& cfg);

// Independent solves, one per damage coefficient, run concurrently.
// Per-run failures are recorded and the sweep continues.
std::vector<SolveReport> sensitivity_sweep(const ModelConfig& cfg,
                                           const std::vector<double>& a_values);

struct SweepSummaryRow {
    double a;
    SolveStatus status;
    double peak_damage_frac;
    double peak_damage_tat;   // degC at the peak-damage period
    int peak_damage_year;
    double min_k_over_y;
    double min_c_percap;      // thousand USD/yr
    int recovery_year;        // see README: first year the pre-dip running
                              // max of c_percap is re-attained; start year if
                              // never below it; 0 if never recovered
};

SweepSummaryRow summarize_run(const SolveReport& report, double a);

// SCC(t) = -(dW/dE(t))/(dW/dC(t))*1000, central differences with pulses of
// 1 GtCO2/yr and 0.001 trillion USD/yr applied to period t, controls fixed.
// Throws std::invalid_argument on a non-converged report.
double social_cost_of_carbon(const SolveReport& report, const ModelConfig& cfg,
                             int t, double pulse_gtco2 = 1.0,
                             double pulse_trillions = 1e-3);

} // namespace dice
