#ifndef FLOCKHYDRO_ALIGNMENT_HPP
#define FLOCKHYDRO_ALIGNMENT_HPP

#include <vector>

#include "flockhydro/kernel.hpp"
#include "flockhydro/state.hpp"

namespace flockhydro {

/// Alignment field that is affine in the velocity: L(x,v) = a(x) - b(x) v.
///
/// Both the Cucker-Smale and the Motsch-Tadmor operators are exactly of this
/// form once the velocity integrals are collapsed through moments, so the
/// coefficients are stored instead of the full (x,v) tensor.
struct AffineVelocityField {
    std::vector<double> a;
    std::vector<double> b;

    double operator()(std::size_t i, double v) const { return a[i] - b[i] * v; }
};

/// Cucker-Smale operator collapsed through moments:
///   a_i = sum_l K(i,l) j_l dx,   b_i = sum_l K(i,l) rho_l dx.
AffineVelocityField cs_operator(const KineticState& f, const KernelSpec& kernel,
                                double rho_floor);

/// Same collapse starting from macroscopic fields.
AffineVelocityField cs_operator_moments(const SpaceGrid& grid, const std::vector<double>& rho,
                                        const std::vector<double>& mom, const KernelSpec& kernel);

/// Motsch-Tadmor operator: (phi_r * j)/(phi_r * rho) - v, affine with b = 1.
/// Throws VacuumError when the mollified density underflows rho_floor.
AffineVelocityField mt_operator(const KineticState& f, const MollifierSpec& phi,
                                double rho_floor);

/// Momentum source of the Euler-flocking system:
///   S_i = sum_l K(i,l) rho_i rho_l (u_l - u_i) dx,
/// accumulated over symmetric pairs so the total sum vanishes exactly for
/// symmetric kernels.
std::vector<double> alignment_source(const MacroState& U, const std::vector<double>& u,
                                     const KernelSpec& kernel);

/// Alignment entropy dissipation
///   1/2 sum_i sum_l K(i,l) rho_i rho_l (u_i - u_l)^2 dx^2  >= 0.
double alignment_dissipation_rate(const MacroState& U, const std::vector<double>& u,
                                  const KernelSpec& kernel);

/// Shifted alignment dissipation with velocities measured relative to a
/// reference field:
///   1/2 sum sum K rho_i rho_l [(u_i - uref_i) - (u_l - uref_l)]^2 dx^2.
double shifted_alignment_dissipation(const std::vector<double>& rho, const std::vector<double>& u,
                                     const std::vector<double>& u_ref, const KernelSpec& kernel,
                                     double dx);

} // namespace flockhydro

#endif
