#ifndef FLOCKHYDRO_MODEL_HPP
#define FLOCKHYDRO_MODEL_HPP

#include <vector>

#include "flockhydro/grid.hpp"
#include "flockhydro/potential.hpp"
#include "flockhydro/state.hpp"

namespace flockhydro {

/// Normalized local Maxwellian f(x,v) = rho(x) (2 pi)^{-1/2} exp(-(v-u(x))^2/2)
/// sampled at cell centers.
///
/// Throws TailError when the analytic tail mass outside [-v_max, v_max],
/// summed over cells and relative to the total mass, exceeds tail_tol:
/// the velocity domain is undersized for this state.
KineticState maxwellian(const PhaseGrid& grid, const std::vector<double>& rho,
                        const std::vector<double>& u, double tail_tol, double t = 0.0);

/// Same construction without the tail check, for diagnostics that need the
/// local Maxwellian of arbitrary moments (e.g. the Maxwellian gap).
KineticState maxwellian_unchecked(const PhaseGrid& grid, const std::vector<double>& rho,
                                  const std::vector<double>& u, double t = 0.0);

/// Analytic tail mass fraction of the Maxwellian with these moments outside
/// the velocity domain.
double maxwellian_tail_fraction(const PhaseGrid& grid, const std::vector<double>& rho,
                                const std::vector<double>& u);

/// Velocity moments (rho, j, u) of a kinetic state. The velocity uses the
/// vacuum rule: u = j/rho where rho exceeds rho_floor and u = 0 elsewhere.
MomentFields moments(const KineticState& f, double rho_floor);

/// Per-cell second velocity moment  sum_j v_j^2 f_ij dv. For a Maxwellian
/// this equals rho (u^2 + 1) up to truncation error.
std::vector<double> second_moment_flux(const KineticState& f);

/// Flocking steady state rho = M exp(-Phi) / sum(exp(-Phi)) dx with zero
/// velocity; the discrete mass equals M exactly.
MacroState stationary_profile(const SpaceGrid& grid, const PotentialSpec& potential, double mass);

/// Residual of the discrete steady momentum balance d(rho)/dx + rho dPhi/dx
/// at a macro state (central differences). Used to measure how well a state
/// satisfies the flocking balance.
std::vector<double> steady_momentum_residual(const MacroState& state,
                                             const PotentialSpec& potential);

} // namespace flockhydro

#endif
