#include "flockhydro/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flockhydro/alignment.hpp"
#include "flockhydro/errors.hpp"
#include "flockhydro/model.hpp"

namespace flockhydro {

namespace {
constexpr double log_2pi = 1.8378770664093454836;

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_same_grid(const SpaceGrid& a, const SpaceGrid& b, const char* who) {
    if (!a.same_layout(b)) throw GridMismatchError(std::string(who) + ": grid mismatch");
}
} // namespace

double kinetic_entropy(const KineticState& state, const PotentialSpec& potential) {
    const std::size_t nx = state.grid.space().nx(), nv = state.grid.nv();
    double s = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double phi = potential.value(i);
        const double* fi = state.f.data() + i * nv;
        double col = 0.0;
        for (std::size_t j = 0; j < nv; ++j) {
            const double v = state.grid.v_center(j);
            col += xlogx(fi[j]) + fi[j] * (0.5 * v * v + phi);
        }
        s += col;
    }
    return s * state.grid.cell_volume();
}

double dissipation_d1(const KineticState& state, double rho_floor) {
    const std::size_t nx = state.grid.space().nx(), nv = state.grid.nv();
    const double dv = state.grid.dv();
    const MomentFields m = moments(state, rho_floor);
    const double fmax = *std::max_element(state.f.begin(), state.f.end());
    const double f_floor = 1e-14 * fmax;
    double s = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double* fi = state.f.data() + i * nv;
        const double u = m.u[i];
        double col = 0.0;
        for (std::size_t j = 1; j + 1 < nv; ++j) {
            if (fi[j] < f_floor || fi[j] <= 0.0) continue;
            const double grad = (fi[j + 1] - fi[j - 1]) / (2.0 * dv);
            const double r = grad - fi[j] * (u - state.grid.v_center(j));
            col += r * r / fi[j];
        }
        s += col;
    }
    return s * state.grid.cell_volume();
}

double dissipation_d2(const KineticState& state, const KernelSpec& kernel) {
    const std::size_t nx = state.grid.space().nx();
    if (kernel.nx() != nx) throw GridMismatchError("dissipation_d2: kernel grid mismatch");
    const MomentFields m = moments(state, 0.0);
    const std::vector<double> e = second_moment_flux(state);
    const double dx = state.grid.space().dx();
    double s = 0.0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t l = 0; l < nx; ++l)
            s += kernel(i, l) * (m.rho[i] * e[l] + m.rho[l] * e[i] - 2.0 * m.mom[i] * m.mom[l]);
    return 0.5 * s * dx * dx;
}

double macro_entropy(const MacroState& U, const PotentialSpec& potential, double rho_floor) {
    const std::size_t n = U.grid.nx();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double kin =
            (U.rho[i] > rho_floor) ? 0.5 * U.p_mom[i] * U.p_mom[i] / U.rho[i] : 0.0;
        s += kin + xlogx(U.rho[i]) + U.rho[i] * potential.value(i);
    }
    return s * U.grid.dx();
}

double relative_pressure(double q, double rho, double floor) {
    const double qc = std::max(q, floor);
    const double rc = std::max(rho, floor);
    return qc * std::log(qc / rc) - (qc - rc);
}

std::vector<double> relative_pressure_field(const std::vector<double>& q,
                                            const std::vector<double>& rho, double floor) {
    std::vector<double> p(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p[i] = relative_pressure(q[i], rho[i], floor);
    return p;
}

double relative_entropy(const MacroState& V, const MacroState& U, const PotentialSpec&,
                        double rho_floor) {
    require_same_grid(V.grid, U.grid, "relative_entropy");
    const std::size_t n = U.grid.nx();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (U.rho[i] <= rho_floor)
            throw VacuumError("relative_entropy: reference state has vacuum at cell " +
                              std::to_string(i));
        const double u = U.p_mom[i] / U.rho[i];
        double kin = 0.0;
        if (V.rho[i] > rho_floor) {
            const double v = V.p_mom[i] / V.rho[i];
            kin = 0.5 * V.rho[i] * (v - u) * (v - u);
        }
        s += kin + relative_pressure(V.rho[i], U.rho[i], rho_floor);
    }
    return s * U.grid.dx();
}

std::vector<double> relative_flux(const MacroState& V, const MacroState& U, double rho_floor) {
    require_same_grid(V.grid, U.grid, "relative_flux");
    const std::size_t n = U.grid.nx();
    std::vector<double> a(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (U.rho[i] <= rho_floor)
            throw VacuumError("relative_flux: reference state has vacuum at cell " +
                              std::to_string(i));
        const double u = U.p_mom[i] / U.rho[i];
        if (V.rho[i] > rho_floor) {
            const double v = V.p_mom[i] / V.rho[i];
            a[i] = V.rho[i] * (v - u) * (v - u);
        }
    }
    return a;
}

double relative_flux_total(const MacroState& V, const MacroState& U, double rho_floor) {
    const std::vector<double> a = relative_flux(V, U, rho_floor);
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s * U.grid.dx();
}

double entropy_difference(const KineticState& f, const PotentialSpec& potential,
                          double rho_floor) {
    const MomentFields m = moments(f, rho_floor);
    MacroState U(f.grid.space(), m.rho, m.mom, f.t);
    return kinetic_entropy(f, potential) - macro_entropy(U, potential, rho_floor);
}

double jensen_gap(const KineticState& f, const PotentialSpec& potential, double rho_floor) {
    return entropy_difference(f, potential, rho_floor) + 0.5 * f.mass() * log_2pi;
}

double maxwellian_gap(const KineticState& f, double rho_floor) {
    const MomentFields m = moments(f, rho_floor);
    const KineticState eq = maxwellian_unchecked(f.grid, m.rho, m.u, f.t);
    double s = 0.0;
    for (std::size_t k = 0; k < f.f.size(); ++k) s += std::abs(f.f[k] - eq.f[k]);
    return s * f.grid.cell_volume();
}

BudgetTerms budget_terms(const KineticState& f, const MacroState& U_ref,
                         const KernelSpec& kernel, const PotentialSpec&, double rho_floor) {
    require_same_grid(f.grid.space(), U_ref.grid, "budget_terms");
    const std::size_t n = U_ref.grid.nx();
    if (kernel.nx() != n) throw GridMismatchError("budget_terms: kernel grid mismatch");
    const double dx = U_ref.grid.dx();

    const MomentFields m = moments(f, rho_floor);
    const std::vector<double> e = second_moment_flux(f);
    std::vector<double> u_ref(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (U_ref.rho[i] <= rho_floor)
            throw VacuumError("budget_terms: reference state has vacuum at cell " +
                              std::to_string(i));
        u_ref[i] = U_ref.p_mom[i] / U_ref.rho[i];
    }

    BudgetTerms out;

    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        a += std::abs(m.rho[i] * m.u[i] * m.u[i] - e[i] + m.rho[i]);
    out.kinetic_approx_term = a * dx;

    double b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = m.u[i] - u_ref[i];
        for (std::size_t l = 0; l < n; ++l)
            b += kernel(i, l) * m.rho[i] * (U_ref.rho[l] - m.rho[l]) * (u_ref[l] - u_ref[i]) * wi;
    }
    out.coupling_term = b * dx * dx;

    out.shifted_dissipation = shifted_alignment_dissipation(m.rho, m.u, u_ref, kernel, dx);
    return out;
}

} // namespace flockhydro
