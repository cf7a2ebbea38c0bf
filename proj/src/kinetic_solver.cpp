#include "flockhydro/kinetic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flockhydro/errors.hpp"
#include "flockhydro/model.hpp"

namespace flockhydro {

namespace {

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

/// Clears round-off dust just below zero; genuine negatives (a scheme bug)
/// pass through and trip the state validation.
inline double clear_dust(double x, double scale) {
    return (x < 0.0 && x > -1e-12 * scale) ? 0.0 : x;
}

/// Chang-Cooper weight: the face interpolation parameter for which the
/// discrete zero-flux state reproduces exp(-P) neighbor ratios exactly.
inline double cc_delta(double peclet) {
    if (std::abs(peclet) < 1e-8) return 0.5 - peclet / 12.0;
    return 1.0 / peclet - 1.0 / std::expm1(peclet);
}

/// Multiplicative two-moment projection: rescales the column by an affine
/// factor (alpha + beta v) so its discrete (rho, rho u) hit the targets
/// exactly. Skipped (targets are already within round-off of reachable) when
/// the column is nearly empty, degenerate, or the factor would lose
/// positivity.
void moment_fix(double* col, const PhaseGrid& grid, double rho_target, double mom_target) {
    const std::size_t nv = grid.nv();
    const double dv = grid.dv();
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < nv; ++j) {
        const double v = grid.v_center(j);
        m0 += col[j];
        m1 += v * col[j];
        m2 += v * v * col[j];
    }
    m0 *= dv;
    m1 *= dv;
    m2 *= dv;
    const double det = m0 * m2 - m1 * m1;
    if (!(m0 > 0.0) || !(det > 1e-12 * m0 * m2)) return;
    const double alpha = (rho_target * m2 - mom_target * m1) / det;
    const double beta = (m0 * mom_target - m1 * rho_target) / det;
    const double end_lo = alpha - beta * grid.v_max();
    const double end_hi = alpha + beta * grid.v_max();
    if (!(std::min(end_lo, end_hi) > 0.0)) return;
    for (std::size_t j = 0; j < nv; ++j) col[j] *= alpha + beta * grid.v_center(j);
}

/// One conservative upwind line update for d_t q + d_x (c(face) q) = 0 on a
/// line of n cells. Fluxes are supplied at the n+1 faces by the caller
/// through `speed(k)`; `at(i)` must resolve ghost cells. Second order uses
/// minmod slopes with time-centered face values.
template <typename At, typename Speed>
void line_update(double* out, std::size_t n, double h, double dt, int order, At at, Speed speed,
                 bool zero_flux_ends) {
    const auto slope = [&](std::ptrdiff_t i) {
        return minmod(at(i) - at(i - 1), at(i + 1) - at(i));
    };
    double flux_left = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        double flux = 0.0;
        if (zero_flux_ends && (i == 0 || i == n)) {
            flux = 0.0;
        } else {
            const double c = speed(i);
            const auto si = static_cast<std::ptrdiff_t>(i);
            if (order >= 2) {
                const double nu = c * dt / h;
                if (c > 0.0)
                    flux = c * (at(si - 1) + 0.5 * (1.0 - nu) * slope(si - 1));
                else
                    flux = c * (at(si) - 0.5 * (1.0 + nu) * slope(si));
            } else {
                flux = c > 0.0 ? c * at(si - 1) : c * at(si);
            }
        }
        if (i > 0) out[i - 1] = at(static_cast<std::ptrdiff_t>(i) - 1) - dt / h * (flux - flux_left);
        flux_left = flux;
    }
}

void check_cfl(double dt, double bound, const char* what) {
    if (dt > bound * (1.0 + 1e-9))
        throw CflError(std::string(what) + ": dt = " + std::to_string(dt) +
                       " exceeds CFL bound " + std::to_string(bound));
}

} // namespace

KineticState step_transport(const KineticState& f, double dt, const KineticScheme& scheme) {
    const PhaseGrid& grid = f.grid;
    const std::size_t nx = grid.space().nx(), nv = grid.nv();
    const double dx = grid.space().dx();
    const double vmax_cell = grid.v_max() - 0.5 * grid.dv();
    check_cfl(dt, scheme.cfl_hyp * dx / vmax_cell, "step_transport");

    const bool periodic = grid.space().boundary() == Boundary::Periodic;
    std::vector<double> fnew(f.f.size());
    std::vector<double> row(nx), rownew(nx);
    for (std::size_t j = 0; j < nv; ++j) {
        const double c = grid.v_center(j);
        for (std::size_t i = 0; i < nx; ++i) row[i] = f(i, j);
        const auto at = [&](std::ptrdiff_t i) -> double {
            const auto n = static_cast<std::ptrdiff_t>(nx);
            if (periodic) return row[static_cast<std::size_t>(((i % n) + n) % n)];
            if (i < 0) i = 0;
            if (i >= n) i = n - 1;
            return row[static_cast<std::size_t>(i)];
        };
        line_update(rownew.data(), nx, dx, dt, scheme.transport_order, at,
                    [&](std::size_t) { return c; }, false);
        const double scale = *std::max_element(row.begin(), row.end());
        for (std::size_t i = 0; i < nx; ++i) fnew[i * nv + j] = clear_dust(rownew[i], scale);
    }
    return KineticState(grid, std::move(fnew), f.t + dt);
}

KineticState step_field(const KineticState& f, double dt, const KernelSpec& kernel,
                        const PotentialSpec& potential, const KineticScheme& scheme) {
    const PhaseGrid& grid = f.grid;
    const std::size_t nx = grid.space().nx(), nv = grid.nv();
    const double dv = grid.dv();

    const MomentFields m = moments(f, scheme.rho_floor);
    const AffineVelocityField field = cs_operator_moments(grid.space(), m.rho, m.mom, kernel);

    double gmax = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double base = field.a[i] - potential.gradient(i);
        gmax = std::max(gmax, std::abs(base - field.b[i] * grid.v_max()));
        gmax = std::max(gmax, std::abs(base + field.b[i] * grid.v_max()));
    }
    if (gmax > 0.0) check_cfl(dt, scheme.cfl_force * dv / gmax, "step_field");

    std::vector<double> fnew(f.f.size());
    std::vector<double> col(nv), colnew(nv);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < nv; ++j) col[j] = f(i, j);
        const double ai = field.a[i], bi = field.b[i], gi = potential.gradient(i);
        const auto at = [&](std::ptrdiff_t j) -> double {
            const auto n = static_cast<std::ptrdiff_t>(nv);
            if (j < 0) j = 0;
            if (j >= n) j = n - 1;
            return col[static_cast<std::size_t>(j)];
        };
        line_update(colnew.data(), nv, dv, dt, scheme.transport_order, at,
                    [&](std::size_t k) { return ai - bi * grid.v_face(k) - gi; }, true);
        const double scale = *std::max_element(col.begin(), col.end());
        for (std::size_t j = 0; j < nv; ++j) colnew[j] = clear_dust(colnew[j], scale);
        // the moment update of the velocity advection collapses exactly to
        // the alignment source; project the column onto that update so the
        // pairwise kernel cancellation survives discretization
        const double mom_target =
            m.mom[i] + dt * (ai * m.rho[i] - bi * m.mom[i] - gi * m.rho[i]);
        moment_fix(colnew.data(), grid, m.rho[i], mom_target);
        for (std::size_t j = 0; j < nv; ++j) fnew[i * nv + j] = colnew[j];
    }
    return KineticState(grid, std::move(fnew), f.t + dt);
}

KineticState step_local_fp(const KineticState& f, double dt, double epsilon,
                           const KineticScheme& scheme) {
    if (std::isinf(epsilon)) {
        KineticState out = f;
        out.t = f.t + dt;
        return out;
    }
    if (!(epsilon > 0.0)) throw std::invalid_argument("step_local_fp: epsilon must be positive");

    const PhaseGrid& grid = f.grid;
    const std::size_t nx = grid.space().nx(), nv = grid.nv();
    const double dv = grid.dv();
    const MomentFields m = moments(f, scheme.rho_floor);

    std::vector<double> fnew(f.f.size(), 0.0);
    std::vector<double> col(nv), sub(nv), dia(nv), sup(nv), rhs(nv), work(nv);
    std::vector<double> c_lo(nv + 1), c_hi(nv + 1);

    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < nv; ++j) col[j] = f(i, j);
        if (!(m.rho[i] > 0.0)) continue; // empty column stays empty
        const double u = m.u[i];

        if (scheme.local_step == LocalStepMode::ChangCooper) {
            const double lam = dt / (epsilon * dv);
            // face coefficients of the flux G_k = cL_k f_{k-1} + cR_k f_k
            for (std::size_t k = 1; k < nv; ++k) {
                const double w = grid.v_face(k) - u;
                const double delta = cc_delta(w * dv);
                c_lo[k] = -1.0 / dv + w * delta;
                c_hi[k] = 1.0 / dv + w * (1.0 - delta);
            }
            for (std::size_t j = 0; j < nv; ++j) {
                const double gl_lo = (j > 0) ? c_lo[j] : 0.0;
                const double gl_hi = (j > 0) ? c_hi[j] : 0.0;
                const double gr_lo = (j + 1 < nv) ? c_lo[j + 1] : 0.0;
                const double gr_hi = (j + 1 < nv) ? c_hi[j + 1] : 0.0;
                sub[j] = lam * gl_lo;
                dia[j] = 1.0 - lam * (gr_lo - gl_hi);
                sup[j] = -lam * gr_hi;
                rhs[j] = col[j];
            }
            // Thomas solve; the matrix is an M-matrix, so the factorization
            // is stable and the solution inherits positivity from rhs
            work[0] = sup[0] / dia[0];
            rhs[0] /= dia[0];
            for (std::size_t j = 1; j < nv; ++j) {
                const double den = dia[j] - sub[j] * work[j - 1];
                work[j] = sup[j] / den;
                rhs[j] = (rhs[j] - sub[j] * rhs[j - 1]) / den;
            }
            for (std::size_t j = nv - 1; j-- > 0;) rhs[j] -= work[j] * rhs[j + 1];
            const double scale = *std::max_element(col.begin(), col.end());
            for (std::size_t j = 0; j < nv; ++j) col[j] = clear_dust(rhs[j], scale);
        } else {
            // analytic relaxation toward the discrete Maxwellian matched to
            // the column's own (rho, rho u)
            double g0 = 0.0, g1 = 0.0, g2 = 0.0;
            std::vector<double>& gauss = work;
            for (std::size_t j = 0; j < nv; ++j) {
                const double w = grid.v_center(j) - u;
                gauss[j] = std::exp(-0.5 * w * w);
                g0 += gauss[j];
                g1 += grid.v_center(j) * gauss[j];
                g2 += grid.v_center(j) * grid.v_center(j) * gauss[j];
            }
            g0 *= dv;
            g1 *= dv;
            g2 *= dv;
            const double det = g0 * g2 - g1 * g1;
            double alpha = m.rho[i] / g0, beta = 0.0;
            if (det > 1e-12 * g0 * g2) {
                alpha = (m.rho[i] * g2 - m.mom[i] * g1) / det;
                beta = (g0 * m.mom[i] - g1 * m.rho[i]) / det;
                if (!(std::min(alpha - beta * grid.v_max(), alpha + beta * grid.v_max()) > 0.0)) {
                    alpha = m.rho[i] / g0;
                    beta = 0.0;
                }
            }
            const double theta = std::exp(-dt / epsilon);
            for (std::size_t j = 0; j < nv; ++j) {
                const double eq = gauss[j] * (alpha + beta * grid.v_center(j));
                col[j] = std::max(eq + theta * (col[j] - eq), 0.0);
            }
        }

        moment_fix(col.data(), grid, m.rho[i], m.mom[i]);
        for (std::size_t j = 0; j < nv; ++j) fnew[i * nv + j] = col[j];
    }
    return KineticState(grid, std::move(fnew), f.t + dt);
}

double kinetic_max_dt(const KineticState& f, const KernelSpec& kernel,
                      const PotentialSpec& potential, const KineticScheme& scheme) {
    const PhaseGrid& grid = f.grid;
    const double vmax_cell = grid.v_max() - 0.5 * grid.dv();
    double dt = scheme.cfl_hyp * grid.space().dx() / vmax_cell;

    const MomentFields m = moments(f, scheme.rho_floor);
    const AffineVelocityField field = cs_operator_moments(grid.space(), m.rho, m.mom, kernel);
    double gmax = 0.0;
    for (std::size_t i = 0; i < grid.space().nx(); ++i) {
        const double base = field.a[i] - potential.gradient(i);
        gmax = std::max(gmax, std::abs(base - field.b[i] * grid.v_max()));
        gmax = std::max(gmax, std::abs(base + field.b[i] * grid.v_max()));
    }
    if (gmax > 0.0) dt = std::min(dt, scheme.cfl_force * grid.dv() / gmax);
    return dt;
}

KineticTrajectory advance(const KineticState& f0, double t_target, double snapshot_dt,
                          double epsilon, const KernelSpec& kernel,
                          const PotentialSpec& potential, const KineticScheme& scheme) {
    if (t_target < f0.t)
        throw std::invalid_argument("advance: t_target precedes the initial time");
    KineticTrajectory traj;
    traj.snapshots.push_back(f0);
    if (t_target == f0.t) return traj;
    if (!(snapshot_dt > 0.0)) snapshot_dt = t_target - f0.t;

    const double mass0 = f0.mass();
    KineticState f = f0;
    double t = f0.t;
    double next_snap = f0.t + snapshot_dt;
    const double tiny = 1e-12 * std::max(1.0, t_target);

    std::size_t step = 0;
    while (t < t_target - tiny) {
        if (step > 10'000'000)
            throw NumericsError("advance: step budget exhausted (runaway CFL collapse?)");
        const double stop = std::min(t_target, next_snap);
        // 0.95 shave keeps the sub-step CFL checks satisfied while the
        // alignment coefficients drift over the step
        double dt = std::min(0.95 * kinetic_max_dt(f, kernel, potential, scheme), stop - t);
        const char* stage = "";
        try {
            if (scheme.splitting == Splitting::Strang) {
                // stiff local step at the ends: snapshots land on the local
                // equilibrium manifold as epsilon -> 0
                stage = "local";
                f = step_local_fp(f, 0.5 * dt, epsilon, scheme);
                stage = "field";
                f = step_field(f, 0.5 * dt, kernel, potential, scheme);
                stage = "transport";
                f = step_transport(f, dt, scheme);
                stage = "field";
                f = step_field(f, 0.5 * dt, kernel, potential, scheme);
                stage = "local";
                f = step_local_fp(f, 0.5 * dt, epsilon, scheme);
            } else {
                stage = "transport";
                f = step_transport(f, dt, scheme);
                stage = "field";
                f = step_field(f, dt, kernel, potential, scheme);
                stage = "local";
                f = step_local_fp(f, dt, epsilon, scheme);
            }
        } catch (const std::invalid_argument& e) {
            throw NumericsError("advance: invalid state after sub-step '" + std::string(stage) +
                                "' at t = " + std::to_string(t) + ": " + e.what());
        }
        for (double v : f.f)
            if (!std::isfinite(v))
                throw NumericsError("advance: non-finite value after sub-step '" +
                                    std::string(stage) + "' at t = " + std::to_string(t));
        t += dt;
        f.t = t;
        ++step;

        if (t >= next_snap - tiny || t >= t_target - tiny) {
            const double drift = std::abs(f.mass() - mass0) / std::max(mass0, 1e-300);
            if (drift > 1e-10)
                throw NumericsError("advance: mass drift " + std::to_string(drift) +
                                    " at t = " + std::to_string(t) + " (step " +
                                    std::to_string(step) + ")");
            traj.snapshots.push_back(f);
            next_snap += snapshot_dt;
        }
    }
    return traj;
}

} // namespace flockhydro
