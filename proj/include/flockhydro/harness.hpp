#ifndef FLOCKHYDRO_HARNESS_HPP
#define FLOCKHYDRO_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "flockhydro/config.hpp"
#include "flockhydro/entropy.hpp"
#include "flockhydro/euler_solver.hpp"
#include "flockhydro/kinetic_solver.hpp"

namespace flockhydro {

/// Everything a single kinetic experiment produces: the kinetic trajectory,
/// its Euler reference (run at euler_refine times the spatial resolution and
/// restricted by cell averaging for comparisons), the per-snapshot report
/// series, and the extra time series the inequality ledger needs.
struct RunProducts {
    double epsilon = 0.0;
    KineticTrajectory kinetic;
    EulerTrajectory euler_ref;                 ///< on the fine grid
    std::vector<MacroState> euler_restricted;  ///< per snapshot, kinetic grid
    std::vector<EntropyReport> reports;

    std::vector<double> kinetic_align_diss; ///< alignment dissipation of the kinetic moments
    std::vector<double> euler_entropy;      ///< macro entropy of the fine reference
    std::vector<double> euler_align_diss;   ///< alignment dissipation of the fine reference
    std::vector<double> rel_flux_total;     ///< integral |relative flux| per snapshot

    double mass_drift = 0.0;     ///< relative, kinetic run
    double momentum_drift = 0.0; ///< absolute change of total kinetic momentum
    double min_f = 0.0;
    double min_rho_euler = 0.0;
    double rho_floor = 0.0;
};

/// Pass/fail record for one inequality of the ledger. Soft entries report a
/// fitted constant and never gate the exit code.
struct LedgerEntry {
    std::string name;
    bool pass = true;
    bool hard = true;
    double margin = 0.0;
    double tol = 0.0;
    std::string note;
};

struct Ledger {
    std::vector<LedgerEntry> entries;
    bool all_hard_pass() const;
    std::string to_text() const;
};

struct TolerancePolicy {
    double jensen_tol = 1e-10;        ///< gap >= -tol
    double entropy_budget_rel = 1e-8; ///< margin >= -tol * |F(f0)|
    /// the discrete Euler balance carries the scheme's own O(dx^2) defect:
    /// margin >= -coeff * dx^2 * max(1, |E(0)|), shrinking under refinement
    double euler_balance_coeff = 0.1;
    double pressure_bound_tol = 1e-12;
    double relative_flux_tol = 1e-12;
};

/// Ordinary least squares on (log eps, log error).
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::vector<double> residuals;
};

RateFit fit_rate(const std::vector<double>& epsilons, const std::vector<double>& errors);

struct SweepEntry {
    double epsilon = 0.0;
    double sup_rel_entropy = 0.0;
    double int_rel_dissipation = 0.0;
    double error = 0.0; ///< sup-in-time relative entropy + integrated dissipation
    double maxwellian_gap_final = 0.0;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    RateFit fit;
    std::vector<std::string> warnings;
    Ledger ledger;
};

/// Trapezoid rule over a sampled time series.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

/// Runs the kinetic experiment of `cfg` at `cfg.model.epsilon` against its
/// Euler reference; writes reports.csv (and field dumps) into out_dir when
/// one is configured. A run that aborts leaves a failure manifest behind.
RunProducts run_single(const ExperimentConfig& cfg);

/// Euler-only run of the same configuration on the kinetic spatial grid.
/// In its report series the rel_dissipation column holds the run's own
/// alignment dissipation rate and the kinetic-only columns are zero.
struct EulerRunProducts {
    EulerTrajectory trajectory;
    std::vector<EntropyReport> reports;
    std::vector<double> align_diss;
    double rho_floor = 0.0;
};

EulerRunProducts run_euler_single(const ExperimentConfig& cfg);

/// epsilon sweep against one shared Euler reference; fits the log-log rate
/// of the error functional and assembles the combined ledger.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// Evaluates the inequality set {Jensen, kinetic entropy budget, Euler
/// entropy balance, pointwise pressure bound, relative-flux bound, Gronwall
/// envelope} on a completed run. Every entry is always present.
Ledger verify_inequalities(const RunProducts& run, const TolerancePolicy& policy);

} // namespace flockhydro

#endif
