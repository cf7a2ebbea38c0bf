#include "flockhydro/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flockhydro {

KineticState::KineticState(PhaseGrid g, std::vector<double> values, double time)
    : grid(g), f(std::move(values)), t(time) {
    if (f.size() != grid.size())
        throw std::invalid_argument("KineticState: field size does not match grid");
    for (double v : f) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("KineticState: density must be nonnegative and finite");
    }
}

double KineticState::mass() const {
    double s = 0.0;
    for (double v : f) s += v;
    return s * grid.cell_volume();
}

double KineticState::momentum() const {
    const std::size_t nx = grid.space().nx(), nv = grid.nv();
    double s = 0.0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nv; ++j) s += grid.v_center(j) * f[i * nv + j];
    return s * grid.cell_volume();
}

double KineticState::min_value() const {
    return *std::min_element(f.begin(), f.end());
}

MacroState::MacroState(SpaceGrid g, std::vector<double> density, std::vector<double> momentum,
                       double time)
    : grid(g), rho(std::move(density)), p_mom(std::move(momentum)), t(time) {
    if (rho.size() != grid.nx() || p_mom.size() != grid.nx())
        throw std::invalid_argument("MacroState: field size does not match grid");
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (!(rho[i] >= 0.0) || !std::isfinite(rho[i]) || !std::isfinite(p_mom[i]))
            throw std::invalid_argument("MacroState: fields must be finite with rho >= 0");
        if (rho[i] == 0.0 && p_mom[i] != 0.0)
            throw std::invalid_argument("MacroState: momentum must vanish where density vanishes");
    }
}

double MacroState::mass() const {
    double s = 0.0;
    for (double v : rho) s += v;
    return s * grid.dx();
}

double MacroState::momentum_total() const {
    double s = 0.0;
    for (double v : p_mom) s += v;
    return s * grid.dx();
}

double MacroState::min_density() const {
    return *std::min_element(rho.begin(), rho.end());
}

} // namespace flockhydro
