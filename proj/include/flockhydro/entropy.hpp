#ifndef FLOCKHYDRO_ENTROPY_HPP
#define FLOCKHYDRO_ENTROPY_HPP

#include <vector>

#include "flockhydro/kernel.hpp"
#include "flockhydro/potential.hpp"
#include "flockhydro/state.hpp"

namespace flockhydro {

/// All scalar diagnostics sampled at one snapshot time.
struct EntropyReport {
    double t = 0.0;
    double F = 0.0;               ///< kinetic entropy
    double D1 = 0.0;              ///< Fokker-Planck dissipation
    double D2 = 0.0;              ///< alignment dissipation of the kinetic state
    double E = 0.0;               ///< macroscopic entropy of the snapshot's moments
    double rel_entropy = 0.0;     ///< relative entropy against the reference state
    double rel_dissipation = 0.0; ///< shifted alignment dissipation
    double jensen_gap = 0.0;
    double maxwellian_gap = 0.0;
    double budget_a = 0.0; ///< kinetic closure defect
    double budget_b = 0.0; ///< density-difference coupling term
    double budget_c = 0.0; ///< shifted alignment dissipation (budget form)
};

/// Kinetic entropy F(f) = sum f log f + f v^2/2 + f Phi, with f log f = 0 at f = 0.
double kinetic_entropy(const KineticState& f, const PotentialSpec& potential);

/// Fokker-Planck dissipation D1 = sum (1/f) |d_v f - f (u - v)|^2 with a
/// central-difference velocity derivative on interior cells. Cells with
/// f below f_floor = 1e-14 max(f) contribute zero.
double dissipation_d1(const KineticState& f, double rho_floor);

/// Alignment dissipation D2 collapsed through moments:
///   1/2 sum_il K(i,l) [rho_i e_l + rho_l e_i - 2 j_i j_l] dx^2,
/// where e is the second velocity moment per column.
double dissipation_d2(const KineticState& f, const KernelSpec& kernel);

/// Macroscopic entropy E(U) = sum P^2/(2 rho) + rho log rho + rho Phi, with
/// the kinetic term dropped below the vacuum floor and rho log rho = 0 at 0.
double macro_entropy(const MacroState& U, const PotentialSpec& potential, double rho_floor);

/// Pointwise relative pressure p(q|rho) = q log(q/rho) - (q - rho) >= 0.
/// Inputs are clamped at floor; the q -> 0 limit gives rho.
double relative_pressure(double q, double rho, double floor);

std::vector<double> relative_pressure_field(const std::vector<double>& q,
                                            const std::vector<double>& rho, double floor);

/// Relative entropy  sum q (v-u)^2/2 + p(q|rho) dx of V against U.
/// Throws VacuumError when the reference U has vacuum cells.
double relative_entropy(const MacroState& V, const MacroState& U, const PotentialSpec& potential,
                        double rho_floor);

/// Momentum-block relative flux q (v-u)^2 per cell.
std::vector<double> relative_flux(const MacroState& V, const MacroState& U, double rho_floor);

/// Integral of |relative flux| over the domain.
double relative_flux_total(const MacroState& V, const MacroState& U, double rho_floor);

/// Distance of F(f) above the entropy of the local Maxwellian with the same
/// moments: F(f) - E(moments f) + (M/2) log(2 pi). Nonnegative, zero exactly
/// on Maxwellians (normalized convention).
double jensen_gap(const KineticState& f, const PotentialSpec& potential, double rho_floor);

/// Raw difference F(f) - E(moments f); equals -(M/2) log(2 pi) on Maxwellians.
double entropy_difference(const KineticState& f, const PotentialSpec& potential,
                          double rho_floor);

/// Discrete L1 distance between f and the Maxwellian of its own moments.
double maxwellian_gap(const KineticState& f, double rho_floor);

/// The three controllable terms of the relative-entropy budget:
///   a: closure defect   sum_i |rho_i u_i^2 - e_i + rho_i| dx,
///   b: coupling term    sum sum K q_i (rho_l - q_l)(u_l - u_i)(ue_i - u_i) dx^2,
///   c: shifted alignment dissipation.
/// The kinetic snapshot supplies (q, ue); the reference supplies (rho, u).
struct BudgetTerms {
    double kinetic_approx_term = 0.0;
    double coupling_term = 0.0;
    double shifted_dissipation = 0.0;
};

BudgetTerms budget_terms(const KineticState& f, const MacroState& U_ref,
                         const KernelSpec& kernel, const PotentialSpec& potential,
                         double rho_floor);

} // namespace flockhydro

#endif
