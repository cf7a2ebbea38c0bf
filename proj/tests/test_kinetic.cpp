#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "flockhydro/entropy.hpp"
#include "flockhydro/errors.hpp"
#include "flockhydro/kinetic_solver.hpp"
#include "flockhydro/model.hpp"

using namespace flockhydro;

namespace {

KineticScheme scheme_of(int order, LocalStepMode local = LocalStepMode::ChangCooper) {
    KineticScheme s;
    s.transport_order = order;
    s.local_step = local;
    s.rho_floor = 1e-14;
    return s;
}

std::vector<double> column(const KineticState& f, std::size_t i) {
    std::vector<double> c(f.grid.nv());
    for (std::size_t j = 0; j < f.grid.nv(); ++j) c[j] = f(i, j);
    return c;
}

} // namespace

TEST_CASE("transport leaves x-uniform states unchanged on periodic grids") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 16, Boundary::Periodic), 4.0, 16);
    const auto f = maxwellian_unchecked(g, std::vector<double>(16, 1.0),
                                        std::vector<double>(16, 0.3));
    for (int order : {1, 2}) {
        const auto f2 = step_transport(f, 1e-3, scheme_of(order));
        for (std::size_t k = 0; k < f.f.size(); ++k) CHECK(f2.f[k] == f.f[k]);
    }
}

TEST_CASE("first-order transport shifts a single-cell pulse downwind") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 16, Boundary::Periodic), 4.0, 16);
    std::vector<double> values(g.size(), 0.0);
    const std::size_t j_pos = 12; // v_center > 0
    REQUIRE(g.v_center(j_pos) > 0.0);
    values[5 * 16 + j_pos] = 1.0;
    const KineticState f(g, values, 0.0);
    const double dt = 0.5 * g.space().dx() / (g.v_max() - 0.5 * g.dv());
    const auto f2 = step_transport(f, dt, scheme_of(1));
    CHECK(f2.mass() == doctest::Approx(f.mass()).epsilon(1e-15));
    // donor cell loses exactly the upwind fraction, the downwind neighbor gains it
    const double nu = g.v_center(j_pos) * dt / g.space().dx();
    CHECK(f2(5, j_pos) == doctest::Approx(1.0 - nu));
    CHECK(f2(6, j_pos) == doctest::Approx(nu));
    for (std::size_t i = 0; i < 16; ++i)
        if (i != 5 && i != 6) CHECK(f2(i, j_pos) == 0.0);
}

TEST_CASE("transport converges at scheme order against the translation oracle") {
    // single occupied velocity row advected for a full period
    for (int order : {1, 2}) {
        std::vector<double> errors;
        for (std::size_t nx : {64, 128}) {
            const PhaseGrid g(SpaceGrid(0.0, 1.0, nx, Boundary::Periodic), 2.0, 4);
            const std::size_t j_pos = 2; // v = +0.5
            REQUIRE(g.v_center(j_pos) == doctest::Approx(0.5));
            std::vector<double> values(g.size(), 0.0);
            for (std::size_t i = 0; i < nx; ++i)
                values[i * 4 + j_pos] =
                    1.0 + 0.5 * std::sin(2.0 * M_PI * g.space().center(i));
            KineticState f(g, values, 0.0);
            const KineticState f0 = f;
            const double period = 1.0 / 0.5;
            const KineticScheme s = scheme_of(order);
            double t = 0.0;
            while (t < period - 1e-12) {
                const double dt =
                    std::min(s.cfl_hyp * g.space().dx() / (g.v_max() - 0.5 * g.dv()),
                             period - t);
                f = step_transport(f, dt, s);
                t += dt;
            }
            double l1 = 0.0;
            for (std::size_t i = 0; i < nx; ++i)
                l1 += std::abs(f(i, j_pos) - f0(i, j_pos));
            errors.push_back(l1 * g.space().dx());
        }
        const double p = oracles::observed_orders(errors).front();
        if (order == 1) {
            CHECK(p > 0.6);
            CHECK(p < 1.3);
        } else {
            CHECK(p > 1.4);
        }
    }
}

TEST_CASE("transport and field steps reject CFL violations") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 16, Boundary::Periodic), 4.0, 16);
    const auto f = maxwellian_unchecked(g, std::vector<double>(16, 1.0),
                                        std::vector<double>(16, 0.0));
    CHECK_THROWS_AS(step_transport(f, 1.0, scheme_of(1)), CflError);
    const auto kernel = KernelSpec::constant(g.space(), 5.0);
    const auto pot = PotentialSpec::none(g.space());
    CHECK_THROWS_AS(step_field(f, 1.0, kernel, pot, scheme_of(1)), CflError);
}

TEST_CASE("field step with no force is the identity") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 8, Boundary::Periodic), 4.0, 16);
    const auto f = maxwellian_unchecked(g, std::vector<double>(8, 1.0),
                                        std::vector<double>(8, 0.4));
    const auto f2 = step_field(f, 1e-2, KernelSpec::constant(g.space(), 0.0),
                               PotentialSpec::none(g.space()), scheme_of(2));
    for (std::size_t k = 0; k < f.f.size(); ++k) CHECK(f2.f[k] == f.f[k]);
}

TEST_CASE("field step conserves total momentum for symmetric kernels") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 24, Boundary::Periodic), 6.0, 48);
    std::vector<double> rho(24), u(24);
    for (std::size_t i = 0; i < 24; ++i) {
        const double x = g.space().center(i);
        rho[i] = 1.0 + 0.4 * std::cos(2.0 * M_PI * x);
        u[i] = 0.5 + 0.3 * std::sin(2.0 * M_PI * x);
    }
    const auto f = maxwellian_unchecked(g, rho, u);
    const auto kernel = KernelSpec::gaussian(g.space(), 1.0, 0.3);
    const auto pot = PotentialSpec::none(g.space());
    const double dt = 0.4 * kinetic_max_dt(f, kernel, pot, scheme_of(2));
    const auto f2 = step_field(f, dt, kernel, pot, scheme_of(2));
    CHECK(f2.momentum() == doctest::Approx(f.momentum()).epsilon(1e-13));
    CHECK(f2.mass() == doctest::Approx(f.mass()).epsilon(1e-13));

    // the same holds at a global equilibrium (constant u)
    const auto feq = maxwellian_unchecked(g, rho, std::vector<double>(24, 0.5));
    const auto feq2 = step_field(feq, dt, KernelSpec::constant(g.space(), 1.0), pot,
                                 scheme_of(2));
    CHECK(feq2.momentum() == doctest::Approx(feq.momentum()).epsilon(1e-13));
}

TEST_CASE("field step centroid follows the harmonic oscillator to first order") {
    const PhaseGrid g(SpaceGrid(-4.0, 4.0, 64, Boundary::CopyOut), 6.0, 64);
    std::vector<double> rho(64), u(64, 0.0);
    for (std::size_t i = 0; i < 64; ++i) {
        const double x = g.space().center(i);
        rho[i] = std::exp(-0.5 * (x - 1.0) * (x - 1.0) / (0.2 * 0.2));
    }
    const auto f = maxwellian_unchecked(g, rho, u);
    const auto kernel = KernelSpec::constant(g.space(), 0.0);
    const auto pot = PotentialSpec::quadratic(g.space(), 1.0);

    const MomentFields m0 = moments(f, 1e-14);
    double mass = 0.0, x_bar = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
        mass += m0.rho[i];
        x_bar += g.space().center(i) * m0.rho[i];
    }
    x_bar /= mass;

    const double dt = 1e-3;
    const auto f2 = step_field(f, dt, kernel, pot, scheme_of(2));
    // d<v>/dt = -<x> exactly in the discrete moment update
    const double v_bar_expected = 0.0 - x_bar * dt;
    const double v_bar = f2.momentum() / f2.mass();
    CHECK(v_bar == doctest::Approx(v_bar_expected).epsilon(1e-10));
}

TEST_CASE("local step keeps the discrete equilibrium fixed") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 8, Boundary::Periodic), 6.0, 64);
    SUBCASE("centered equilibrium, Chang-Cooper") {
        const auto f = maxwellian_unchecked(g, std::vector<double>(8, 1.0),
                                            std::vector<double>(8, 0.0));
        const auto f2 = step_local_fp(f, 0.1, 0.01, scheme_of(2));
        for (std::size_t k = 0; k < f.f.size(); ++k)
            CHECK(f2.f[k] == doctest::Approx(f.f[k]).epsilon(1e-12));
    }
    SUBCASE("drifting equilibrium, Chang-Cooper") {
        const auto f = maxwellian_unchecked(g, std::vector<double>(8, 1.0),
                                            std::vector<double>(8, 0.5));
        const auto f2 = step_local_fp(f, 0.1, 0.01, scheme_of(2));
        double l1 = 0.0;
        for (std::size_t k = 0; k < f.f.size(); ++k) l1 += std::abs(f2.f[k] - f.f[k]);
        CHECK(l1 * g.cell_volume() < 1e-6);
    }
    SUBCASE("exact-projection mode") {
        const auto f = maxwellian_unchecked(g, std::vector<double>(8, 1.0),
                                            std::vector<double>(8, 0.0));
        const auto f2 = step_local_fp(f, 0.1, 0.01, scheme_of(2, LocalStepMode::ExactProjection));
        for (std::size_t k = 0; k < f.f.size(); ++k)
            CHECK(f2.f[k] == doctest::Approx(f.f[k]).epsilon(1e-12));
    }
}

TEST_CASE("local step relaxes any state to the Maxwellian of its own moments") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 4, Boundary::Periodic), 8.0, 128);
    // bimodal start
    const auto a = maxwellian_unchecked(g, std::vector<double>(4, 0.7),
                                        std::vector<double>(4, -0.8));
    const auto b = maxwellian_unchecked(g, std::vector<double>(4, 0.5),
                                        std::vector<double>(4, 1.0));
    std::vector<double> values(g.size());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = a.f[k] + b.f[k];
    const KineticState f(g, values, 0.0);
    const MomentFields m = moments(f, 1e-14);

    for (LocalStepMode mode : {LocalStepMode::ChangCooper, LocalStepMode::ExactProjection}) {
        const auto relaxed = step_local_fp(f, 1.0, 1e-8, scheme_of(2, mode));
        const auto eq = maxwellian_unchecked(g, m.rho, m.u);
        double l1 = 0.0;
        for (std::size_t k = 0; k < values.size(); ++k)
            l1 += std::abs(relaxed.f[k] - eq.f[k]);
        CHECK(l1 * g.cell_volume() < 1e-8);
    }
}

TEST_CASE("local step conserves column moments to machine precision") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 8, Boundary::Periodic), 8.0, 96);
    const auto a = maxwellian_unchecked(g, std::vector<double>(8, 0.7),
                                        std::vector<double>(8, -0.6));
    const auto b = maxwellian_unchecked(g, std::vector<double>(8, 0.4),
                                        std::vector<double>(8, 0.9));
    std::vector<double> values(g.size());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = a.f[k] + b.f[k];
    const KineticState f(g, values, 0.0);
    const MomentFields before = moments(f, 1e-14);

    for (LocalStepMode mode : {LocalStepMode::ChangCooper, LocalStepMode::ExactProjection}) {
        const auto f2 = step_local_fp(f, 0.05, 0.02, scheme_of(2, mode));
        const MomentFields after = moments(f2, 1e-14);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(after.rho[i] == doctest::Approx(before.rho[i]).epsilon(1e-13));
            CHECK(after.mom[i] == doctest::Approx(before.mom[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("local step dissipates the column free energy") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 4, Boundary::Periodic), 8.0, 96);
    const auto a = maxwellian_unchecked(g, std::vector<double>(4, 0.6),
                                        std::vector<double>(4, -1.0));
    const auto b = maxwellian_unchecked(g, std::vector<double>(4, 0.6),
                                        std::vector<double>(4, 1.0));
    std::vector<double> values(g.size());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = a.f[k] + b.f[k];
    KineticState f(g, values, 0.0);

    const auto free_energy = [&](const KineticState& state) {
        const MomentFields m = moments(state, 1e-14);
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto col = column(state, i);
            for (std::size_t j = 0; j < state.grid.nv(); ++j) {
                const double w = state.grid.v_center(j) - m.u[i];
                if (col[j] > 0.0) s += col[j] * std::log(col[j]) + 0.5 * col[j] * w * w;
            }
        }
        return s * state.grid.cell_volume();
    };

    double prev = free_energy(f);
    for (int step = 0; step < 5; ++step) {
        f = step_local_fp(f, 0.05, 0.05, scheme_of(2));
        const double cur = free_energy(f);
        CHECK(cur < prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("epsilon = infinity disables the local step") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 4, Boundary::Periodic), 6.0, 32);
    const auto a = maxwellian_unchecked(g, std::vector<double>(4, 0.7),
                                        std::vector<double>(4, -0.8));
    const auto f2 = step_local_fp(a, 0.1, KineticScheme::epsilon_off, scheme_of(2));
    for (std::size_t k = 0; k < a.f.size(); ++k) CHECK(f2.f[k] == a.f[k]);
}

TEST_CASE("advance with t_target = t0 returns the initial snapshot only") {
    const PhaseGrid g(SpaceGrid(0.0, 1.0, 8, Boundary::Periodic), 6.0, 32);
    const auto f = maxwellian_unchecked(g, std::vector<double>(8, 1.0),
                                        std::vector<double>(8, 0.0));
    const auto traj = advance(f, 0.0, 0.1, 0.1, KernelSpec::constant(g.space(), 1.0),
                              PotentialSpec::none(g.space()), scheme_of(2));
    CHECK(traj.snapshots.size() == 1);
    CHECK(traj.snapshots[0].t == 0.0);
}

TEST_CASE("free transport matches the method-of-characteristics oracle") {
    const std::size_t nx = 64, nv = 32;
    const PhaseGrid g(SpaceGrid(0.0, 1.0, nx, Boundary::Periodic), 6.0, nv);
    std::vector<double> rho(nx);
    for (std::size_t i = 0; i < nx; ++i)
        rho[i] = 1.0 + 0.5 * std::sin(2.0 * M_PI * g.space().center(i));
    const auto f0 = maxwellian_unchecked(g, rho, std::vector<double>(nx, 0.0));

    const double T = 0.1;
    const auto traj = advance(f0, T, T, KineticScheme::epsilon_off,
                              KernelSpec::constant(g.space(), 0.0),
                              PotentialSpec::none(g.space()), scheme_of(2));
    const KineticState& fT = traj.snapshots.back();

    // characteristics: f(x, v, T) = f0(x - vT, v) with the same Maxwellian profile
    double l1 = 0.0;
    const double c = 1.0 / std::sqrt(2.0 * M_PI);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            const double v = g.v_center(j);
            const double x0 = g.space().center(i) - v * T;
            const double r0 = 1.0 + 0.5 * std::sin(2.0 * M_PI * x0);
            const double exact = r0 * c * std::exp(-0.5 * v * v);
            l1 += std::abs(fT(i, j) - exact);
        }
    l1 *= g.cell_volume();
    CHECK(l1 < 5e-3); // second-order scheme on a coarse grid, short horizon
    CHECK(fT.mass() == doctest::Approx(f0.mass()).epsilon(1e-12));
}

TEST_CASE("advance conserves mass and momentum and preserves positivity") {
    const std::size_t nx = 32, nv = 48;
    const PhaseGrid g(SpaceGrid(0.0, 1.0, nx, Boundary::Periodic), 6.0, nv);
    std::vector<double> rho(nx), u(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = g.space().center(i);
        rho[i] = 1.0 + 0.3 * std::cos(2.0 * M_PI * x);
        u[i] = 0.5 + 0.2 * std::sin(2.0 * M_PI * x);
    }
    const auto f0 = maxwellian(g, rho, u, 1e-5);
    const auto kernel = KernelSpec::gaussian(g.space(), 1.0, 0.3);
    const auto pot = PotentialSpec::none(g.space());
    const auto traj = advance(f0, 0.1, 0.02, 0.05, kernel, pot, scheme_of(2));

    const double m0 = traj.snapshots.front().mass();
    const double p0 = traj.snapshots.front().momentum();
    for (const KineticState& s : traj.snapshots) {
        CHECK(s.min_value() >= 0.0);
        CHECK(std::abs(s.mass() - m0) / m0 < 1e-10);
        CHECK(std::abs(s.momentum() - p0) / std::abs(p0) < 1e-8);
    }
}

TEST_CASE("vacuum rule consistency holds along confined trajectories") {
    const std::size_t nx = 48, nv = 32;
    const PhaseGrid g(SpaceGrid(-7.5, 7.5, nx, Boundary::CopyOut), 6.0, nv);
    std::vector<double> rho(nx), u(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = g.space().center(i);
        rho[i] = std::exp(-0.5 * x * x / (1.1 * 1.1)) / (1.1 * std::sqrt(2.0 * M_PI));
        u[i] = 0.4 * std::exp(-0.5 * x * x);
    }
    const auto f0 = maxwellian(g, rho, u, 1e-5);
    const double floor = 1e-12;
    const auto traj = advance(f0, 0.1, 0.1, 0.05, KernelSpec::gaussian(g.space(), 1.0, 1.0),
                              PotentialSpec::quadratic(g.space(), 1.0), scheme_of(2));
    for (const KineticState& s : traj.snapshots) {
        CHECK(s.min_value() >= 0.0);
        const MomentFields m = moments(s, floor);
        for (std::size_t i = 0; i < nx; ++i)
            if (m.rho[i] <= floor) {
                // momentum is bounded by v_max * rho, so it vanishes with rho
                CHECK(std::abs(m.mom[i]) <= g.v_max() * floor);
                CHECK(m.u[i] == 0.0);
            }
    }
}

TEST_CASE("well-prepared data stays near the local Maxwellian as epsilon shrinks") {
    const std::size_t nx = 24, nv = 32;
    const PhaseGrid g(SpaceGrid(0.0, 1.0, nx, Boundary::Periodic), 6.0, nv);
    std::vector<double> rho(nx), u(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = g.space().center(i);
        rho[i] = 1.0 + 0.3 * std::cos(2.0 * M_PI * x);
        u[i] = 0.2 * std::sin(2.0 * M_PI * x);
    }
    const auto f0 = maxwellian(g, rho, u, 1e-5);
    const auto kernel = KernelSpec::gaussian(g.space(), 1.0, 0.3);
    const auto pot = PotentialSpec::none(g.space());

    std::vector<double> gaps;
    for (double eps : {0.1, 0.05, 0.025}) {
        const auto traj = advance(f0, 0.2, 0.2, eps, kernel, pot, scheme_of(2));
        gaps.push_back(maxwellian_gap(traj.snapshots.back(), 1e-14));
    }
    CHECK(gaps[1] < gaps[0]);
    CHECK(gaps[2] < gaps[1]);
}

TEST_CASE("Lie splitting and exact projection advance with the same invariants") {
    const std::size_t nx = 24, nv = 32;
    const PhaseGrid g(SpaceGrid(0.0, 1.0, nx, Boundary::Periodic), 6.0, nv);
    std::vector<double> rho(nx), u(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = g.space().center(i);
        rho[i] = 1.0 + 0.3 * std::cos(2.0 * M_PI * x);
        u[i] = 0.4 + 0.2 * std::sin(2.0 * M_PI * x);
    }
    const auto f0 = maxwellian(g, rho, u, 1e-5);
    const auto kernel = KernelSpec::gaussian(g.space(), 1.0, 0.3);
    const auto pot = PotentialSpec::none(g.space());

    KineticScheme lie = scheme_of(2);
    lie.splitting = Splitting::Lie;
    KineticScheme proj = scheme_of(2, LocalStepMode::ExactProjection);

    const double p0 = f0.momentum();
    std::vector<double> finals;
    for (const KineticScheme& s : {lie, proj, scheme_of(2)}) {
        const auto traj = advance(f0, 0.1, 0.1, 0.05, kernel, pot, s);
        const KineticState& fT = traj.snapshots.back();
        CHECK(fT.min_value() >= 0.0);
        CHECK(fT.mass() == doctest::Approx(f0.mass()).epsilon(1e-10));
        CHECK(fT.momentum() == doctest::Approx(p0).epsilon(1e-8));
        finals.push_back(maxwellian_gap(fT, 1e-14));
    }
    // all three integrators land at an O(eps) equilibrium distance
    for (double gap : finals) CHECK(gap < 0.1);
}

TEST_CASE("asymptotic stability: epsilon far below dt stays bounded and Maxwellian") {
    const std::size_t nx = 16, nv = 32;
    const PhaseGrid g(SpaceGrid(0.0, 1.0, nx, Boundary::Periodic), 6.0, nv);
    std::vector<double> rho(nx), u(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = g.space().center(i);
        rho[i] = 1.0 + 0.3 * std::cos(2.0 * M_PI * x);
        u[i] = 0.2 * std::sin(2.0 * M_PI * x);
    }
    const auto f0 = maxwellian(g, rho, u, 1e-5);
    // epsilon spans five orders of magnitude below dt with a fixed grid; the
    // gap keeps shrinking (or saturates at the scheme floor) and nothing blows up
    std::vector<double> gaps;
    for (double eps : {0.05, 1e-3, 1e-7}) {
        const auto traj =
            advance(f0, 0.05, 0.05, eps, KernelSpec::gaussian(g.space(), 1.0, 0.3),
                    PotentialSpec::none(g.space()), scheme_of(2));
        const KineticState& fT = traj.snapshots.back();
        CHECK(fT.min_value() >= 0.0);
        gaps.push_back(maxwellian_gap(fT, 1e-14));
    }
    CHECK(gaps[1] < gaps[0]);
    CHECK(gaps[2] < gaps[1] * 1.05 + 1e-12);
    CHECK(gaps[2] < 1e-3);
}
