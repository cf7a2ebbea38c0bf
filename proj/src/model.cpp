#include "flockhydro/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "flockhydro/errors.hpp"

namespace flockhydro {

namespace {
constexpr double inv_sqrt_2pi = 0.39894228040143267794; // (2 pi)^{-1/2}

/// Upper tail P(Z > z) of the standard normal.
double normal_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }
} // namespace

double maxwellian_tail_fraction(const PhaseGrid& grid, const std::vector<double>& rho,
                                const std::vector<double>& u) {
    const std::size_t nx = grid.space().nx();
    const double vmax = grid.v_max();
    double tail = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        tail += rho[i] * (normal_tail(vmax - u[i]) + normal_tail(vmax + u[i]));
        mass += rho[i];
    }
    if (mass <= 0.0) return 0.0;
    return tail / mass;
}

KineticState maxwellian_unchecked(const PhaseGrid& grid, const std::vector<double>& rho,
                                  const std::vector<double>& u, double t) {
    const std::size_t nx = grid.space().nx(), nv = grid.nv();
    if (rho.size() != nx || u.size() != nx)
        throw std::invalid_argument("maxwellian: moment fields do not match grid");
    std::vector<double> f(nx * nv);
    for (std::size_t i = 0; i < nx; ++i) {
        if (!(rho[i] >= 0.0))
            throw std::invalid_argument("maxwellian: density must be nonnegative");
        if (!std::isfinite(u[i]))
            throw std::invalid_argument("maxwellian: velocity must be finite");
        const double a = rho[i] * inv_sqrt_2pi;
        for (std::size_t j = 0; j < nv; ++j) {
            const double w = grid.v_center(j) - u[i];
            f[i * nv + j] = a * std::exp(-0.5 * w * w);
        }
    }
    return KineticState(grid, std::move(f), t);
}

KineticState maxwellian(const PhaseGrid& grid, const std::vector<double>& rho,
                        const std::vector<double>& u, double tail_tol, double t) {
    const double tail = maxwellian_tail_fraction(grid, rho, u);
    if (tail > tail_tol)
        throw TailError("maxwellian: tail mass fraction " + std::to_string(tail) +
                        " exceeds tolerance " + std::to_string(tail_tol) +
                        "; enlarge v_max or relax tail_tol");
    return maxwellian_unchecked(grid, rho, u, t);
}

MomentFields moments(const KineticState& state, double rho_floor) {
    const std::size_t nx = state.grid.space().nx(), nv = state.grid.nv();
    const double dv = state.grid.dv();
    MomentFields m;
    m.rho.assign(nx, 0.0);
    m.mom.assign(nx, 0.0);
    m.u.assign(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        double r = 0.0, j = 0.0;
        const double* fi = state.f.data() + i * nv;
        for (std::size_t k = 0; k < nv; ++k) {
            r += fi[k];
            j += state.grid.v_center(k) * fi[k];
        }
        m.rho[i] = r * dv;
        m.mom[i] = j * dv;
        m.u[i] = (m.rho[i] > rho_floor) ? m.mom[i] / m.rho[i] : 0.0;
    }
    return m;
}

std::vector<double> second_moment_flux(const KineticState& state) {
    const std::size_t nx = state.grid.space().nx(), nv = state.grid.nv();
    const double dv = state.grid.dv();
    std::vector<double> e(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        double s = 0.0;
        const double* fi = state.f.data() + i * nv;
        for (std::size_t k = 0; k < nv; ++k) {
            const double v = state.grid.v_center(k);
            s += v * v * fi[k];
        }
        e[i] = s * dv;
    }
    return e;
}

MacroState stationary_profile(const SpaceGrid& grid, const PotentialSpec& potential, double mass) {
    if (!(mass > 0.0))
        throw std::invalid_argument("stationary_profile: mass must be positive");
    const std::size_t nx = grid.nx();
    std::vector<double> w(nx);
    double z = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        w[i] = std::exp(-potential.value(i));
        z += w[i];
    }
    z *= grid.dx();
    std::vector<double> rho(nx), mom(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) rho[i] = mass * w[i] / z;
    return MacroState(grid, std::move(rho), std::move(mom), 0.0);
}

std::vector<double> steady_momentum_residual(const MacroState& state,
                                             const PotentialSpec& potential) {
    const std::size_t n = state.grid.nx();
    const double dx = state.grid.dx();
    std::vector<double> res(n, 0.0);
    auto rho_at = [&](std::ptrdiff_t i) -> double {
        const auto nn = static_cast<std::ptrdiff_t>(n);
        if (state.grid.boundary() == Boundary::Periodic) {
            return state.rho[static_cast<std::size_t>(((i % nn) + nn) % nn)];
        }
        if (i < 0) i = 0;
        if (i >= nn) i = nn - 1;
        return state.rho[static_cast<std::size_t>(i)];
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        const double drho = (rho_at(si + 1) - rho_at(si - 1)) / (2.0 * dx);
        res[i] = drho + state.rho[i] * potential.gradient(i);
    }
    return res;
}

} // namespace flockhydro
