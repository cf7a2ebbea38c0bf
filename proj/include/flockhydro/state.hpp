#ifndef FLOCKHYDRO_STATE_HPP
#define FLOCKHYDRO_STATE_HPP

#include <vector>

#include "flockhydro/grid.hpp"

namespace flockhydro {

/// Cell-averaged phase-space density at one instant.
///
/// Stored row-major: f[i*nv + j] is the cell (x_i, v_j). States are value
/// types; solver steps produce fresh snapshots rather than mutating shared
/// ones.
struct KineticState {
    PhaseGrid grid;
    std::vector<double> f;
    double t = 0.0;

    KineticState(PhaseGrid g, std::vector<double> values, double time);

    double operator()(std::size_t i, std::size_t j) const { return f[i * grid.nv() + j]; }
    double& operator()(std::size_t i, std::size_t j) { return f[i * grid.nv() + j]; }

    double mass() const;
    double momentum() const;
    double min_value() const;
};

/// Conservative macroscopic pair (density, momentum) on a space grid.
struct MacroState {
    SpaceGrid grid;
    std::vector<double> rho;
    std::vector<double> p_mom;
    double t = 0.0;

    MacroState(SpaceGrid g, std::vector<double> density, std::vector<double> momentum,
               double time);

    double mass() const;
    double momentum_total() const;
    double min_density() const;
};

/// Macroscopic fields extracted from a kinetic state, with the vacuum rule
/// already applied to the velocity.
struct MomentFields {
    std::vector<double> rho;
    std::vector<double> mom; ///< j = integral of v f dv, reported as is
    std::vector<double> u;   ///< j/rho above the vacuum floor, 0 below
};

} // namespace flockhydro

#endif
