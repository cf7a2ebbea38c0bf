#ifndef FLOCKHYDRO_EULER_SOLVER_HPP
#define FLOCKHYDRO_EULER_SOLVER_HPP

#include <array>
#include <vector>

#include "flockhydro/kernel.hpp"
#include "flockhydro/potential.hpp"
#include "flockhydro/state.hpp"

namespace flockhydro {

enum class EulerFlux { Rusanov, Hll };

/// Finite-volume scheme for the Euler-flocking system in conservative form.
/// Isothermal pressure p(rho) = rho, so the sound speed is one.
struct EulerScheme {
    EulerFlux flux = EulerFlux::Rusanov;
    int order = 2; ///< 1 or 2 (minmod)
    double cfl = 0.45;
    double rho_floor = 1e-14;
};

/// Physical flux A(U) = (P, P^2/rho + rho). Throws VacuumError at or below
/// the floor: the strong reference solution must stay away from vacuum.
std::array<double, 2> flux_A(double rho, double mom, double rho_floor);

/// Source F(U) = (0, alignment source - rho dPhi/dx) per cell.
std::vector<std::array<double, 2>> source_F(const MacroState& U, const KernelSpec& kernel,
                                            const PotentialSpec& potential, double rho_floor);

struct EulerTrajectory {
    std::vector<MacroState> snapshots;
    double max_grad_u = 0.0; ///< largest |du/dx| seen at any snapshot
};

/// SSP-RK2 finite-volume evolution with unsplit sources; snapshots every
/// snapshot_dt. Aborts (VacuumError / NumericsError) on vacuum formation,
/// NaN, or mass drift beyond 1e-10 relative.
EulerTrajectory advance_euler(const MacroState& U0, double t_target, double snapshot_dt,
                              const EulerScheme& scheme, const KernelSpec& kernel,
                              const PotentialSpec& potential);

/// Symmetry report for the symmetrizing matrix A0(w) = diag(1/rho, rho) of
/// the smooth-form system: builds the flux Jacobian in the (rho, u)
/// variables by central differences and measures how far A0 * J is from
/// symmetric, together with the spectral bound c0 of A0.
struct SymmetrizerReport {
    double asymmetry = 0.0;
    double c0 = 1.0;
};

SymmetrizerReport symmetrizer_check(double rho, double u, double rho_floor);

/// Residual of the entropy/entropy-flux compatibility relation
///   dQ/dU_j = sum_k dA_k/dU_j dE/dU_k
/// with E(U) = P^2/2rho + rho log rho + rho Phi and the closed form
/// Q(U) = u (E(U) + rho), all derivatives by central differences.
double entropy_flux_check(double rho, double mom, double phi, double rho_floor);

} // namespace flockhydro

#endif
