#include "flockhydro/euler_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flockhydro/alignment.hpp"
#include "flockhydro/errors.hpp"

namespace flockhydro {

namespace {

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

struct Cons {
    double rho, mom;
};

/// One right-hand-side evaluation -div A + F on the whole grid.
class EulerRhs {
  public:
    EulerRhs(const SpaceGrid& grid, const EulerScheme& scheme, const KernelSpec& kernel,
             const PotentialSpec& potential)
        : grid_(grid), scheme_(scheme), kernel_(kernel), potential_(potential) {}

    void operator()(const std::vector<double>& rho, const std::vector<double>& mom,
                    std::vector<double>& drho, std::vector<double>& dmom) const {
        const std::size_t n = grid_.nx();
        const double dx = grid_.dx();
        const bool periodic = grid_.boundary() == Boundary::Periodic;

        const auto cell = [&](std::ptrdiff_t i) -> Cons {
            const auto nn = static_cast<std::ptrdiff_t>(n);
            if (periodic) {
                const std::size_t k = static_cast<std::size_t>(((i % nn) + nn) % nn);
                return {rho[k], mom[k]};
            }
            if (i < 0) i = 0;
            if (i >= nn) i = nn - 1;
            return {rho[static_cast<std::size_t>(i)], mom[static_cast<std::size_t>(i)]};
        };
        const auto slope = [&](std::ptrdiff_t i) -> Cons {
            const Cons lo = cell(i - 1), mid = cell(i), hi = cell(i + 1);
            return {minmod(mid.rho - lo.rho, hi.rho - mid.rho),
                    minmod(mid.mom - lo.mom, hi.mom - mid.mom)};
        };

        drho.assign(n, 0.0);
        dmom.assign(n, 0.0);
        double flux_rho_left = 0.0, flux_mom_left = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const auto si = static_cast<std::ptrdiff_t>(i);
            Cons ul = cell(si - 1), ur = cell(si);
            if (scheme_.order >= 2) {
                const Cons sl = slope(si - 1), sr = slope(si);
                ul = {ul.rho + 0.5 * sl.rho, ul.mom + 0.5 * sl.mom};
                ur = {ur.rho - 0.5 * sr.rho, ur.mom - 0.5 * sr.mom};
            }
            const auto al = flux_A(ul.rho, ul.mom, scheme_.rho_floor);
            const auto ar = flux_A(ur.rho, ur.mom, scheme_.rho_floor);
            const double uL = ul.mom / ul.rho, uR = ur.mom / ur.rho;
            double frho, fmom;
            if (scheme_.flux == EulerFlux::Rusanov) {
                const double lam = std::max(std::abs(uL) + 1.0, std::abs(uR) + 1.0);
                frho = 0.5 * (al[0] + ar[0]) - 0.5 * lam * (ur.rho - ul.rho);
                fmom = 0.5 * (al[1] + ar[1]) - 0.5 * lam * (ur.mom - ul.mom);
            } else {
                const double sL = std::min(uL - 1.0, uR - 1.0);
                const double sR = std::max(uL + 1.0, uR + 1.0);
                if (sL >= 0.0) {
                    frho = al[0];
                    fmom = al[1];
                } else if (sR <= 0.0) {
                    frho = ar[0];
                    fmom = ar[1];
                } else {
                    const double inv = 1.0 / (sR - sL);
                    frho = (sR * al[0] - sL * ar[0] + sL * sR * (ur.rho - ul.rho)) * inv;
                    fmom = (sR * al[1] - sL * ar[1] + sL * sR * (ur.mom - ul.mom)) * inv;
                }
            }
            if (i > 0) {
                drho[i - 1] = -(frho - flux_rho_left) / dx;
                dmom[i - 1] = -(fmom - flux_mom_left) / dx;
            }
            flux_rho_left = frho;
            flux_mom_left = fmom;
        }

        MacroState U(grid_, rho, mom, 0.0);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = mom[i] / rho[i];
        const std::vector<double> align = alignment_source(U, u, kernel_);
        for (std::size_t i = 0; i < n; ++i)
            dmom[i] += align[i] - rho[i] * potential_.gradient(i);
    }

  private:
    const SpaceGrid& grid_;
    const EulerScheme& scheme_;
    const KernelSpec& kernel_;
    const PotentialSpec& potential_;
};

double max_wave_speed(const std::vector<double>& rho, const std::vector<double>& mom) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        s = std::max(s, std::abs(mom[i] / rho[i]) + 1.0);
    return s;
}

} // namespace

std::array<double, 2> flux_A(double rho, double mom, double rho_floor) {
    if (!(rho > rho_floor))
        throw VacuumError("flux_A: density " + std::to_string(rho) +
                          " at or below the vacuum floor");
    return {mom, mom * mom / rho + rho};
}

std::vector<std::array<double, 2>> source_F(const MacroState& U, const KernelSpec& kernel,
                                            const PotentialSpec& potential, double rho_floor) {
    const std::size_t n = U.grid.nx();
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = (U.rho[i] > rho_floor) ? U.p_mom[i] / U.rho[i] : 0.0;
    const std::vector<double> align = alignment_source(U, u, kernel);
    std::vector<std::array<double, 2>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = {0.0, align[i] - U.rho[i] * potential.gradient(i)};
    return out;
}

EulerTrajectory advance_euler(const MacroState& U0, double t_target, double snapshot_dt,
                              const EulerScheme& scheme, const KernelSpec& kernel,
                              const PotentialSpec& potential) {
    const std::size_t n = U0.grid.nx();
    for (std::size_t i = 0; i < n; ++i)
        if (!(U0.rho[i] > scheme.rho_floor))
            throw VacuumError("advance_euler: initial density at or below the floor at cell " +
                              std::to_string(i));
    if (t_target < U0.t)
        throw std::invalid_argument("advance_euler: t_target precedes the initial time");

    EulerTrajectory traj;
    traj.snapshots.push_back(U0);
    const auto record_grad = [&](const std::vector<double>& rho, const std::vector<double>& mom) {
        // blow-up monitor: velocity gradients only where there is mass; the
        // near-vacuum tail carries no shock-formation information
        const double cutoff = 1e-6 * *std::max_element(rho.begin(), rho.end());
        double g = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (rho[i] < cutoff || rho[i + 1] < cutoff) continue;
            g = std::max(g, std::abs(mom[i + 1] / rho[i + 1] - mom[i] / rho[i]) / U0.grid.dx());
        }
        traj.max_grad_u = std::max(traj.max_grad_u, g);
    };
    record_grad(U0.rho, U0.p_mom);
    if (t_target == U0.t) return traj;
    if (!(snapshot_dt > 0.0)) snapshot_dt = t_target - U0.t;

    const double mass0 = U0.mass();
    EulerRhs rhs(U0.grid, scheme, kernel, potential);
    std::vector<double> rho = U0.rho, mom = U0.p_mom;
    std::vector<double> r1, m1, dr, dm;
    double t = U0.t;
    double next_snap = U0.t + snapshot_dt;
    const double tiny = 1e-12 * std::max(1.0, t_target);

    std::size_t step = 0;
    while (t < t_target - tiny) {
        if (++step > 10'000'000)
            throw NumericsError("advance_euler: step budget exhausted (runaway CFL collapse?)");
        const double stop = std::min(t_target, next_snap);
        double dt = std::min(scheme.cfl * U0.grid.dx() / max_wave_speed(rho, mom), stop - t);

        rhs(rho, mom, dr, dm);
        r1.assign(n, 0.0);
        m1.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            r1[i] = rho[i] + dt * dr[i];
            m1[i] = mom[i] + dt * dm[i];
            if (!(r1[i] > 0.0))
                throw VacuumError("advance_euler: vacuum formed at cell " + std::to_string(i) +
                                  ", t = " + std::to_string(t));
        }
        rhs(r1, m1, dr, dm);
        for (std::size_t i = 0; i < n; ++i) {
            rho[i] = 0.5 * (rho[i] + r1[i] + dt * dr[i]);
            mom[i] = 0.5 * (mom[i] + m1[i] + dt * dm[i]);
            if (!(rho[i] > 0.0))
                throw VacuumError("advance_euler: vacuum formed at cell " + std::to_string(i) +
                                  ", t = " + std::to_string(t));
            if (!std::isfinite(rho[i]) || !std::isfinite(mom[i]))
                throw NumericsError("advance_euler: non-finite state at cell " +
                                    std::to_string(i) + ", t = " + std::to_string(t));
        }
        t += dt;

        if (t >= next_snap - tiny || t >= t_target - tiny) {
            MacroState snap(U0.grid, rho, mom, t);
            const double drift = std::abs(snap.mass() - mass0) / std::max(mass0, 1e-300);
            if (drift > 1e-10)
                throw NumericsError("advance_euler: mass drift " + std::to_string(drift) +
                                    " at t = " + std::to_string(t));
            record_grad(rho, mom);
            traj.snapshots.push_back(std::move(snap));
            next_snap += snapshot_dt;
        }
    }
    return traj;
}

SymmetrizerReport symmetrizer_check(double rho, double u, double rho_floor) {
    if (!(rho > rho_floor)) throw VacuumError("symmetrizer_check: vacuum state");
    // smooth-form flux in the (rho, u) variables
    const auto f = [](double r, double w) -> std::array<double, 2> {
        return {r * w, w * w + std::log(r)};
    };
    const double h0 = 1e-6 * std::max(1.0, std::abs(rho));
    const double h1 = 1e-6 * std::max(1.0, std::abs(u));
    std::array<std::array<double, 2>, 2> jac{};
    const auto fp0 = f(rho + h0, u), fm0 = f(rho - h0, u);
    const auto fp1 = f(rho, u + h1), fm1 = f(rho, u - h1);
    for (int i = 0; i < 2; ++i) {
        jac[i][0] = (fp0[i] - fm0[i]) / (2.0 * h0);
        jac[i][1] = (fp1[i] - fm1[i]) / (2.0 * h1);
    }
    // A0 = diag(1/rho, rho)
    const double m01 = jac[0][1] / rho;
    const double m10 = jac[1][0] * rho;
    SymmetrizerReport rep;
    rep.asymmetry = std::abs(m01 - m10);
    rep.c0 = std::max(rho, 1.0 / rho);
    return rep;
}

double entropy_flux_check(double rho, double mom, double phi, double rho_floor) {
    if (!(rho > rho_floor)) throw VacuumError("entropy_flux_check: vacuum state");
    const auto entropy = [phi](double r, double p) { return 0.5 * p * p / r + r * std::log(r) + r * phi; };
    const auto qflux = [&](double r, double p) { return p / r * (entropy(r, p) + r); };
    const auto aflux = [](double r, double p) -> std::array<double, 2> {
        return {p, p * p / r + r};
    };
    const double h0 = 1e-6 * std::max(1.0, std::abs(rho));
    const double h1 = 1e-6 * std::max(1.0, std::abs(mom));
    const auto diff = [&](auto&& fn, int comp) {
        const double hp = comp == 0 ? h0 : h1;
        const double rp = comp == 0 ? rho + hp : rho;
        const double rm = comp == 0 ? rho - hp : rho;
        const double pp = comp == 1 ? mom + hp : mom;
        const double pm = comp == 1 ? mom - hp : mom;
        return (fn(rp, pp) - fn(rm, pm)) / (2.0 * hp);
    };
    double residual = 0.0;
    for (int j = 0; j < 2; ++j) {
        const double dq = diff(qflux, j);
        const double da0 = diff([&](double r, double p) { return aflux(r, p)[0]; }, j);
        const double da1 = diff([&](double r, double p) { return aflux(r, p)[1]; }, j);
        const double de0 = diff(entropy, 0);
        const double de1 = diff(entropy, 1);
        residual = std::max(residual, std::abs(dq - (da0 * de0 + da1 * de1)));
    }
    return residual;
}

} // namespace flockhydro
